use std::f64::consts::PI;

use orlicz::funcspace::{char_function, unit_ball_volume, Distribution};
use orlicz::{Ball, RadialPowerFunction, SimpleFunction};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::gamma::gamma;

fn simple() -> impl Strategy<Value = SimpleFunction> {
    prop::collection::vec((-4.0..4.0f64, -4.0..4.0f64), 1..16).prop_map(|cells| {
        let cells: Vec<(f64, f64)> = cells.into_iter().map(|(m, v)| (10f64.powf(m), 10f64.powf(v))).collect();
        SimpleFunction::from_cells(&cells).unwrap()
    })
}

fn radial() -> impl Strategy<Value = RadialPowerFunction> {
    (0.1..10.0f64, 1usize..4, 0.05..0.95f64)
        .prop_map(|(c, n, frac)| RadialPowerFunction::global(c, frac * n as f64, n).unwrap())
}

proptest! {
    #[test]
    fn simple_distribution_is_nonincreasing(f in simple(), a in -5.0..5.0f64, b in -5.0..5.0f64) {
        let (l1, l2) = (10f64.powf(a.min(b)), 10f64.powf(a.max(b)));
        prop_assert!(f.distribution(l1) >= f.distribution(l2));
    }

    #[test]
    fn radial_distribution_is_nonincreasing(f in radial(), a in -5.0..5.0f64, b in -5.0..5.0f64) {
        let (l1, l2) = (10f64.powf(a.min(b)), 10f64.powf(a.max(b)));
        prop_assert!(Distribution::distribution(&f, l1) >= Distribution::distribution(&f, l2));
    }

    #[test]
    fn scaling_moves_the_distribution_exactly(f in simple(), k in 0.01..100.0f64, l in -5.0..5.0f64) {
        let lambda = 10f64.powf(l);
        let g = f.scale(k).unwrap();
        // Scaling and comparison are both exact when k is a power of two.
        let k2 = 2f64.powi(k.log2().round() as i32);
        let g2 = f.scale(k2).unwrap();
        prop_assert_eq!(g2.distribution(k2 * lambda), f.distribution(lambda));
        // Otherwise only rounding of the scaled levels can move a boundary.
        let lo = f.distribution(lambda * (1.0 + 1e-12));
        let hi = f.distribution(lambda * (1.0 - 1e-12));
        let d = g.distribution(k * lambda);
        prop_assert!(lo <= d && d <= hi);
    }

    #[test]
    fn indicator_distribution_is_the_volume(n in 1usize..6, r in 0.01..100.0f64, l in 0.0..3.0f64) {
        let ball = Ball::centered(n, r).unwrap();
        let chi = char_function(&ball);
        let expected = if l < 1.0 { ball.volume() } else { 0.0 };
        prop_assert_eq!(chi.distribution(l), expected);
    }

    #[test]
    fn ball_volume_doubles_by_two_to_the_n(n in 1usize..8, r in 0.01..100.0f64) {
        let v1 = Ball::centered(n, r).unwrap().volume();
        let v2 = Ball::centered(n, 2.0 * r).unwrap().volume();
        let bigger = Ball::centered(n, r * (1.0 + 1e-6)).unwrap().volume();
        prop_assert!(((v2 / v1) - 2f64.powi(n as i32)).abs() <= 1e-12 * 2f64.powi(n as i32));
        prop_assert!(bigger > v1);
    }

    #[test]
    fn center_does_not_affect_volume(c in prop::collection::vec(-10.0..10.0f64, 3), r in 0.1..10.0f64) {
        let moved = Ball::new(c, r).unwrap();
        prop_assert_eq!(moved.volume(), Ball::centered(3, r).unwrap().volume());
    }
}

#[test]
fn unit_ball_volume_matches_gamma_formula() {
    for n in 1..=20usize {
        let expected = PI.powf(n as f64 / 2.0) / gamma(n as f64 / 2.0 + 1.0);
        let got = unit_ball_volume(n);
        assert!((got - expected).abs() <= 1e-12 * expected, "n = {n}: {got} vs {expected}");
    }
}

#[test]
fn unit_ball_volume_matches_monte_carlo() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let draws = 400_000;
    for n in 1..=4usize {
        let inside = (0..draws)
            .filter(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0f64).powi(2)).sum::<f64>() <= 1.0)
            .count();
        let estimate = 2f64.powi(n as i32) * inside as f64 / draws as f64;
        let exact = unit_ball_volume(n);
        // Five standard errors of the hit-or-miss estimator.
        let p = exact / 2f64.powi(n as i32);
        let se = 2f64.powi(n as i32) * (p * (1.0 - p) / draws as f64).sqrt();
        assert!((estimate - exact).abs() <= 5.0 * se, "n = {n}: {estimate} vs {exact}");
    }
}
