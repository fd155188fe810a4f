use orlicz::inclusion::{
    ball_sweep, dominates, empirical_norm_inequality, find_min_constant, holder_triple_check, product_norm_bound,
    MinConstant, NormKind,
};
use orlicz::sampling::{sample_pairs, SampleSpec};
use orlicz::{ToleranceConfig, YoungFunction};
use proptest::prelude::*;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn primitive() -> impl Strategy<Value = YoungFunction> {
    prop_oneof![
        (1.0..6.0f64).prop_map(YoungFunction::power),
        Just(YoungFunction::exp_minus_one()),
        (1.0..4.0f64, 0.0..2.0f64).prop_map(|(p, q)| YoungFunction::power_log(p, q)),
    ]
}

/// `Φ` and a rescaled copy `cΦ(k·)`, which always admit a least constant.
fn comparable_pair() -> impl Strategy<Value = (YoungFunction, YoungFunction)> {
    (primitive(), 0.25..4.0f64, 0.25..4.0f64).prop_map(|(phi, k, c)| (phi.clone(), phi.arg_scale(k).val_scale(c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn certificates_transfer_to_both_norms((phi, psi) in comparable_pair(), seed in any::<u64>()) {
        let found = find_min_constant(&phi, &psi, &cfg()).unwrap();
        let MinConstant::Found { c, .. } = found else {
            return Err(TestCaseError::fail(format!("no constant for {phi:?} vs {psi:?}: {found:?}")));
        };
        prop_assert!(dominates(&phi, &psi, c, &cfg()).unwrap().holds());
        let spec = SampleSpec::with_seed(seed, 30);
        for kind in [NormKind::Strong, NormKind::Weak] {
            let r = empirical_norm_inequality(&phi, &psi, c, &spec, kind, &cfg()).unwrap();
            prop_assert_eq!(r.violations, 0, "{:?}", r.worst);
        }
    }

    /// Ball indicators pass at C exactly when the pointwise condition holds.
    #[test]
    fn ball_sweep_agrees_with_domination((phi, psi) in comparable_pair(), factor in 0.5..1.5f64) {
        let least = find_min_constant(&phi, &psi, &cfg()).unwrap().constant().unwrap();
        let c = least * factor;
        prop_assume!((factor - 1.0).abs() > 1e-3);
        let pointwise = dominates(&phi, &psi, c, &cfg()).unwrap().holds();
        let strong = ball_sweep(&phi, &psi, c, 241, NormKind::Strong, &cfg()).unwrap().holds();
        let weak = ball_sweep(&phi, &psi, c, 241, NormKind::Weak, &cfg()).unwrap().holds();
        prop_assert_eq!(pointwise, strong);
        prop_assert_eq!(pointwise, weak);
    }

    #[test]
    fn wider_grid_never_lowers_the_constant((phi, psi) in comparable_pair()) {
        let narrow = find_min_constant(&phi, &psi, &cfg()).unwrap().constant().unwrap();
        let wide_cfg = ToleranceConfig { grid_range: (1e-12, 1e12), grid_points: 6000, ..cfg() };
        let wide = find_min_constant(&phi, &psi, &wide_cfg).unwrap().constant().unwrap();
        prop_assert!(wide >= narrow * (1.0 - 2.0 * cfg().rel_tol), "{wide} < {narrow}");
    }

    #[test]
    fn product_ratio_is_at_most_two(p1 in 1.0..6.0f64, p2 in 1.0..6.0f64, seed in any::<u64>()) {
        let p3 = p1 * p2 / (p1 + p2);
        prop_assume!(p3 >= 1.0);
        let (a, b, c) = (YoungFunction::power(p1), YoungFunction::power(p2), YoungFunction::power(p3));
        prop_assert!(holder_triple_check(&a, &b, &c, &cfg()).unwrap().holds);
        for (f, g) in sample_pairs(&SampleSpec::with_seed(seed, 5)).unwrap() {
            let r = product_norm_bound(&f, &g, &a, &b, &c, &cfg()).unwrap();
            prop_assert!(r.ratio <= 2.0 + 1e-9, "ratio {}", r.ratio);
        }
    }
}
