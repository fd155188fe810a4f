//! Sampled checks of `‖f‖_Φ ≤ C‖f‖_Ψ` in the strong and weak spaces.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{log_grid, ToleranceConfig};
use crate::error::Result;
use crate::funcspace::{Function, SimpleFunction};
use crate::norms::{luxemburg_norm, weak_norm, NormResult};
use crate::sampling::{sample_functions, SampleSpec};
use crate::young::YoungFunction;

/// Relative slack on sampled norm inequalities.
pub const NORM_SLACK: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    Strong,
    Weak,
}

impl NormKind {
    pub fn norm(self, f: &SimpleFunction, phi: &YoungFunction, cfg: &ToleranceConfig) -> Result<NormResult> {
        let f = Function::Simple(f.clone());
        match self {
            NormKind::Strong => luxemburg_norm(&f, phi, cfg),
            NormKind::Weak => weak_norm(&f, phi, cfg),
        }
    }
}

/// A sampled function together with both of its norms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleWitness {
    pub index: usize,
    pub function: SimpleFunction,
    pub norm_phi: f64,
    pub norm_psi: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalReport {
    pub kind: NormKind,
    #[serde(rename = "C")]
    pub c: f64,
    pub spec: SampleSpec,
    pub samples: usize,
    pub violations: usize,
    /// Largest `‖f‖_Φ / ‖f‖_Ψ` seen; a lower bound on the optimal constant.
    pub max_ratio: f64,
    /// Largest `‖f‖_Φ − C‖f‖_Ψ` seen.
    pub max_violation: f64,
    /// The sample attaining `max_ratio`.
    pub worst: Option<SampleWitness>,
}

impl EmpiricalReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Checks `‖f‖_Φ ≤ C‖f‖_Ψ` on every function of the seeded family.
pub fn empirical_norm_inequality(
    phi: &YoungFunction,
    psi: &YoungFunction,
    c: f64,
    spec: &SampleSpec,
    kind: NormKind,
    cfg: &ToleranceConfig,
) -> Result<EmpiricalReport> {
    cfg.validate()?;
    let samples = sample_functions(spec)?;
    let norms: Vec<(f64, f64)> = samples
        .par_iter()
        .map(|f| Ok((kind.norm(f, phi, cfg)?.value, kind.norm(f, psi, cfg)?.value)))
        .collect::<Result<_>>()?;
    let mut report = EmpiricalReport {
        kind,
        c,
        spec: *spec,
        samples: samples.len(),
        violations: 0,
        max_ratio: 0.0,
        max_violation: f64::NEG_INFINITY,
        worst: None,
    };
    for (i, (f, &(a, b))) in samples.iter().zip(&norms).enumerate() {
        if a > c * b * (1.0 + NORM_SLACK) {
            report.violations += 1;
        }
        report.max_violation = report.max_violation.max(a - c * b);
        let ratio = if a == 0.0 { 0.0 } else { a / b };
        if report.worst.is_none() || ratio > report.max_ratio {
            report.max_ratio = ratio;
            report.worst = Some(SampleWitness {
                index: i,
                function: f.clone(),
                norm_phi: a,
                norm_psi: b,
                ratio,
            });
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint {
    pub measure: f64,
    pub norm_phi: f64,
    pub norm_psi: f64,
}

/// Comparison of `‖χ_E‖_Φ` and `C‖χ_E‖_Ψ` over a range of measures `|E|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallSweep {
    pub kind: NormKind,
    #[serde(rename = "C")]
    pub c: f64,
    pub measure_range: (f64, f64),
    pub points: usize,
    pub violations: usize,
    pub max_ratio: f64,
    pub worst: Option<SweepPoint>,
}

impl BallSweep {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Levels `s` kept away from saturation so both inverses stay finite.
const LEVEL_CLAMP: (f64, f64) = (1e-290, 1e290);

/// Measures `|E| = 1/s` for the levels `s = Φ(t)` and `s = Ψ(Ct)` reached on
/// the t-grid. Since `‖χ_E‖_Φ ≤ C‖χ_E‖_Ψ` is `Ψ⁻¹(s) ≤ CΦ⁻¹(s)` at
/// `s = 1/|E|`, this is the range on which the sweep mirrors the grid.
pub fn sweep_measure_range(phi: &YoungFunction, psi: &YoungFunction, c: f64, cfg: &ToleranceConfig) -> (f64, f64) {
    let (t_min, t_max) = cfg.grid_range;
    let clamp = |s: f64| s.clamp(LEVEL_CLAMP.0, LEVEL_CLAMP.1);
    let s_lo = clamp(phi.eval(t_min).min(psi.eval(c * t_min)));
    let s_hi = clamp(phi.eval(t_max).max(psi.eval(c * t_max)));
    (1.0 / s_hi, 1.0 / s_lo)
}

/// Indicator norms over `points` log-spaced measures spanning
/// [`sweep_measure_range`].
pub fn ball_sweep(
    phi: &YoungFunction,
    psi: &YoungFunction,
    c: f64,
    points: usize,
    kind: NormKind,
    cfg: &ToleranceConfig,
) -> Result<BallSweep> {
    cfg.validate()?;
    let range = sweep_measure_range(phi, psi, c, cfg);
    let measures = log_grid(range.0, range.1, points.max(2));
    let rows: Vec<SweepPoint> = measures
        .par_iter()
        .map(|&m| {
            let chi = SimpleFunction::from_cells(&[(m, 1.0)])?;
            Ok(SweepPoint {
                measure: m,
                norm_phi: kind.norm(&chi, phi, cfg)?.value,
                norm_psi: kind.norm(&chi, psi, cfg)?.value,
            })
        })
        .collect::<Result<_>>()?;
    let mut sweep = BallSweep {
        kind,
        c,
        measure_range: range,
        points: rows.len(),
        violations: 0,
        max_ratio: 0.0,
        worst: None,
    };
    for p in rows {
        if p.norm_phi > c * p.norm_psi * (1.0 + NORM_SLACK) {
            sweep.violations += 1;
        }
        let ratio = p.norm_phi / p.norm_psi;
        if sweep.worst.is_none() || ratio > sweep.max_ratio {
            sweep.max_ratio = ratio;
            sweep.worst = Some(p);
        }
    }
    Ok(sweep)
}
