//! Monotone bracketing and bisection, plus a log-grid maximizer.

use serde::{Deserialize, Serialize};

use crate::config::{log_grid, ToleranceConfig};
use crate::error::Result;

const BRACKET_LIMIT: f64 = 1e300;

/// Outcome of a monotone infimum search `inf { b > 0 : feasible(b) }`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Infimum {
    /// `f64::INFINITY` when no representable `b` is feasible.
    pub value: f64,
    pub iterations: usize,
    pub bracket: (f64, f64),
    pub converged: bool,
}

/// Infimum of the feasible set of a predicate that is monotone in `b`
/// (infeasible below the infimum, feasible above). The bracket starts at
/// `b = 1` and is expanded by doubling or halving; bisection then runs
/// until `hi - lo ≤ rel_tol · hi` and the midpoint is returned.
pub fn monotone_infimum<F>(mut feasible: F, cfg: &ToleranceConfig) -> Result<Infimum>
where
    F: FnMut(f64) -> Result<bool>,
{
    let mut iterations = 0usize;
    let mut probe = |b: f64, iterations: &mut usize| {
        *iterations += 1;
        feasible(b)
    };
    let (mut lo, mut hi);
    if probe(1.0, &mut iterations)? {
        hi = 1.0;
        lo = 0.5;
        while probe(lo, &mut iterations)? {
            hi = lo;
            lo *= 0.5;
            if lo < 1.0 / BRACKET_LIMIT {
                return Ok(Infimum {
                    value: 0.0,
                    iterations,
                    bracket: (0.0, hi),
                    converged: true,
                });
            }
        }
    } else {
        lo = 1.0;
        hi = 2.0;
        while !probe(hi, &mut iterations)? {
            lo = hi;
            hi *= 2.0;
            if hi > BRACKET_LIMIT {
                return Ok(Infimum {
                    value: f64::INFINITY,
                    iterations,
                    bracket: (lo, f64::INFINITY),
                    converged: true,
                });
            }
        }
    }
    for _ in 0..cfg.max_bisect_iters {
        if hi - lo <= cfg.rel_tol * hi {
            return Ok(Infimum {
                value: 0.5 * (lo + hi),
                iterations,
                bracket: (lo, hi),
                converged: true,
            });
        }
        let mid = 0.5 * (lo + hi);
        if probe(mid, &mut iterations)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Infimum {
        value: 0.5 * (lo + hi),
        iterations,
        bracket: (lo, hi),
        converged: hi - lo <= cfg.rel_tol * hi,
    })
}

/// Approximate maximum of `f` over `[lo, hi]`: a log-spaced scan followed by
/// golden-section refinement (in `ln t`) around the best grid point.
/// Returns `(argmax, max)`.
pub fn maximize_log<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, points: usize) -> (f64, f64) {
    let grid = log_grid(lo, hi, points.max(2));
    let mut best = 0usize;
    let mut best_val = f64::NEG_INFINITY;
    for (i, &t) in grid.iter().enumerate() {
        let v = f(t);
        if v > best_val {
            best_val = v;
            best = i;
        }
    }
    let mut a = grid[best.saturating_sub(1)].ln();
    let mut b = grid[(best + 1).min(grid.len() - 1)].ln();
    let mut best_t = grid[best];
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1.exp());
    let mut f2 = f(x2.exp());
    for _ in 0..80 {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1.exp());
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2.exp());
        }
        if b - a < 1e-14 {
            break;
        }
    }
    for (x, v) in [(x1, f1), (x2, f2)] {
        if v > best_val {
            best_val = v;
            best_t = x.exp();
        }
    }
    (best_t, best_val)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infimum_of_threshold() {
        let cfg = ToleranceConfig::default();
        for &target in &[1e-5, 0.3, 1.0, 7.5, 1e6] {
            let r = monotone_infimum(|b| Ok(b >= target), &cfg).unwrap();
            assert!(r.converged);
            assert!((r.value - target).abs() <= 1e-10 * target, "{target}: {r:?}");
            assert!(r.bracket.0 < target && r.bracket.1 >= target);
        }
    }

    #[test]
    fn infimum_extremes() {
        let cfg = ToleranceConfig::default();
        let zero = monotone_infimum(|_| Ok(true), &cfg).unwrap();
        assert_eq!(zero.value, 0.0);
        let inf = monotone_infimum(|_| Ok(false), &cfg).unwrap();
        assert_eq!(inf.value, f64::INFINITY);
    }

    #[test]
    fn infimum_reports_nonconvergence() {
        let cfg = ToleranceConfig {
            max_bisect_iters: 3,
            ..Default::default()
        };
        let r = monotone_infimum(|b| Ok(b >= 1.2345), &cfg).unwrap();
        assert!(!r.converged);
        assert!(r.bracket.0 < 1.2345 && r.bracket.1 >= 1.2345);
    }

    #[test]
    fn maximizer_finds_interior_peak() {
        // t e^{-t} peaks at t = 1 with value 1/e.
        let (t, v) = maximize_log(|t| t * (-t).exp(), 1e-6, 1e6, 200);
        assert!((t - 1.0).abs() < 1e-6, "{t}");
        assert!((v - (-1f64).exp()).abs() < 1e-12);
    }
}
