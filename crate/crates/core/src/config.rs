use serde::{Deserialize, Serialize};

use crate::error::{OrliczError, Result};

/// Numerical tolerances and grid settings shared by every solver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ToleranceConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_bisect_iters: usize,
    pub grid_points: usize,
    /// Log-spaced verification grid `(t_min, t_max)`.
    pub grid_range: (f64, f64),
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_bisect_iters: 200,
            grid_points: 4096,
            grid_range: (1e-8, 1e8),
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.rel_tol) || self.rel_tol >= 1.0 {
            return Err(OrliczError::InvalidConfig(format!(
                "rel_tol must lie in (0, 1), got {}",
                self.rel_tol
            )));
        }
        if !positive(self.abs_tol) {
            return Err(OrliczError::InvalidConfig(format!(
                "abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if self.max_bisect_iters == 0 {
            return Err(OrliczError::InvalidConfig("max_bisect_iters must be positive".into()));
        }
        if self.grid_points < 2 {
            return Err(OrliczError::InvalidConfig("grid_points must be at least 2".into()));
        }
        let (lo, hi) = self.grid_range;
        if !positive(lo) || !positive(hi) || lo >= hi {
            return Err(OrliczError::InvalidConfig(format!(
                "grid_range must satisfy 0 < t_min < t_max, got ({lo}, {hi})"
            )));
        }
        Ok(())
    }

    /// The verification grid described by `grid_range` and `grid_points`.
    pub fn grid(&self) -> Vec<f64> {
        log_grid(self.grid_range.0, self.grid_range.1, self.grid_points)
    }
}

/// `count` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    debug_assert!(lo > 0.0 && hi >= lo);
    if count == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    let step = (b - a) / (count - 1) as f64;
    (0..count)
        .map(|i| {
            if i + 1 == count {
                hi
            } else if i == 0 {
                lo
            } else {
                (a + step * i as f64).exp()
            }
        })
        .collect()
}
