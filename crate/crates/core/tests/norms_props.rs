use orlicz::funcspace::{char_function, unit_ball_volume};
use orlicz::norms::{char_norm_closed_form, layer_cake_modular, simple_modular};
use orlicz::{luxemburg_norm, modular, weak_norm, Ball, Function, RadialPowerFunction, SimpleFunction, ToleranceConfig, YoungFunction};
use proptest::prelude::*;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn young() -> impl Strategy<Value = YoungFunction> {
    let primitive = prop_oneof![
        (1.0..8.0f64).prop_map(YoungFunction::power),
        Just(YoungFunction::exp_minus_one()),
        (1.0..4.0f64, 0.0..2.0f64).prop_map(|(p, q)| YoungFunction::power_log(p, q)),
    ];
    (primitive, 0.25..4.0f64, 0.25..4.0f64, any::<bool>())
        .prop_map(|(f, k, c, scale)| if scale { f.arg_scale(k).val_scale(c) } else { f })
}

fn simple() -> impl Strategy<Value = SimpleFunction> {
    prop::collection::vec((-4.0..4.0f64, -4.0..4.0f64), 1..16).prop_map(|cells| {
        let cells: Vec<(f64, f64)> = cells.into_iter().map(|(m, v)| (10f64.powf(m), 10f64.powf(v))).collect();
        SimpleFunction::from_cells(&cells).unwrap()
    })
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn indicator_norms_match_closed_form(phi in young(), n in 1usize..4, r in 0.1..10.0f64) {
        let ball = Ball::centered(n, r).unwrap();
        let chi = Function::Simple(char_function(&ball));
        let exact = char_norm_closed_form(&phi, ball.volume(), &cfg()).unwrap();
        let strong = luxemburg_norm(&chi, &phi, &cfg()).unwrap().value;
        let weak = weak_norm(&chi, &phi, &cfg()).unwrap().value;
        prop_assert!(rel_close(strong, exact, 1e-8), "{strong} vs {exact}");
        prop_assert!(rel_close(weak, exact, 1e-8), "{weak} vs {exact}");
    }

    #[test]
    fn modular_at_the_norm_is_at_most_one(phi in young(), f in simple()) {
        let n = luxemburg_norm(&Function::Simple(f.clone()), &phi, &cfg()).unwrap();
        prop_assume!(n.value > 0.0 && n.value.is_finite());
        prop_assert!(simple_modular(&f, &phi, n.value) <= 1.0 + 1e-6);
    }

    #[test]
    fn unit_ball_is_the_modular_sublevel(phi in young(), f in simple(), k in prop_oneof![Just(0.99), Just(1.01)]) {
        let n = luxemburg_norm(&Function::Simple(f.clone()), &phi, &cfg()).unwrap().value;
        prop_assume!(n > 0.0 && n.is_finite());
        let h = f.scale(k / n).unwrap();
        let hn = luxemburg_norm(&Function::Simple(h.clone()), &phi, &cfg()).unwrap().value;
        prop_assert_eq!(hn <= 1.0, simple_modular(&h, &phi, 1.0) <= 1.0);
    }

    #[test]
    fn weak_norm_never_exceeds_strong(phi in young(), f in simple()) {
        let g = Function::Simple(f);
        let strong = luxemburg_norm(&g, &phi, &cfg()).unwrap().value;
        let weak = weak_norm(&g, &phi, &cfg()).unwrap().value;
        prop_assert!(weak <= strong * (1.0 + 1e-9), "{weak} > {strong}");
    }

    #[test]
    fn norms_are_homogeneous(phi in young(), f in simple(), k in 0.01..100.0f64) {
        let g = Function::Simple(f.clone());
        let kg = Function::Simple(f.scale(k).unwrap());
        for norm in [luxemburg_norm, weak_norm] {
            let a = norm(&g, &phi, &cfg()).unwrap().value;
            let b = norm(&kg, &phi, &cfg()).unwrap().value;
            prop_assert!(rel_close(b, k * a, 4.0 * cfg().rel_tol), "{b} vs {}", k * a);
        }
    }

    #[test]
    fn layer_cake_agrees_with_exact_sum(phi in young(), f in simple(), b in -2.0..2.0f64) {
        let b = 10f64.powf(b);
        let exact = simple_modular(&f, &phi, b);
        prop_assume!(exact.is_finite() && exact < 1e250);
        let quad = layer_cake_modular(&f, &phi, b, &cfg()).unwrap().value();
        prop_assert!(rel_close(exact, quad, 1e-6) || (exact - quad).abs() < 1e-300, "{exact} vs {quad}");
    }

    /// `c|x|^{-n/p}` has `μ{f > λ} = ω_n (c/λ)^p`, so the weak supremum is
    /// constant in λ and the weak norm is `c ω_n^{1/p}`, while the modular
    /// diverges logarithmically at both ends.
    #[test]
    fn radial_witness_is_weak_but_not_strong(c in 0.1..10.0f64, n in 1usize..4, p in 1.0..6.0f64, b in -3.0..3.0f64) {
        let f = Function::RadialPower(RadialPowerFunction::global(c, n as f64 / p, n).unwrap());
        let phi = YoungFunction::power(p);
        let weak = weak_norm(&f, &phi, &cfg()).unwrap();
        let exact = c * unit_ball_volume(n).powf(1.0 / p);
        prop_assert!(rel_close(weak.value, exact, 1e-6), "{} vs {exact}", weak.value);
        prop_assert!(modular(&f, &phi, 10f64.powf(b), &cfg()).unwrap().is_infinite());
        prop_assert!(luxemburg_norm(&f, &phi, &cfg()).unwrap().is_infinite());
    }
}
