//! The five equivalent inclusion statements, each backed by its own evidence.

use serde::{Deserialize, Serialize};

use super::domination::{dominates, find_min_constant, inverse_cross_check, InverseCrossCheck, MinConstant};
use super::empirical::{ball_sweep, empirical_norm_inequality, BallSweep, EmpiricalReport, NormKind};
use crate::config::ToleranceConfig;
use crate::error::{OrliczError, Result};
use crate::sampling::SampleSpec;
use crate::young::YoungFunction;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InclusionConfig {
    pub samples: SampleSpec,
    /// Constant used for statements (2)–(5) when no least constant exists.
    pub probe_constant: f64,
    /// Number of indicator measures in each ball sweep.
    pub sweep_points: usize,
}

impl Default for InclusionConfig {
    fn default() -> Self {
        InclusionConfig {
            samples: SampleSpec::default(),
            probe_constant: 10.0,
            sweep_points: 401,
        }
    }
}

impl InclusionConfig {
    pub fn validate(&self) -> Result<()> {
        self.samples.validate()?;
        if !(self.probe_constant.is_finite() && self.probe_constant > 0.0) {
            return Err(OrliczError::InvalidConfig(format!(
                "probe_constant must be positive, got {}",
                self.probe_constant
            )));
        }
        if self.sweep_points < 2 {
            return Err(OrliczError::InvalidConfig("sweep_points must be at least 2".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
}

impl Status {
    fn from_bool(b: bool) -> Self {
        if b {
            Status::Holds
        } else {
            Status::Fails
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Evidence {
    Certificate {
        min_constant: MinConstant,
        cross_check: Box<InverseCrossCheck>,
    },
    BallSweep(BallSweep),
    Sampled(EmpiricalReport),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Statement {
    pub index: u8,
    pub claim: &'static str,
    pub status: Status,
    pub evidence: Evidence,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InclusionVerdict {
    /// The constant every statement was tested with.
    #[serde(rename = "C")]
    pub c: f64,
    /// Whether `C` is a certified least constant or the probe constant.
    pub certified: bool,
    pub statements: Vec<Statement>,
    /// All five statements report the same status.
    pub consistent: bool,
    /// `Holds` or `Fails` when consistent, otherwise `Inconclusive`.
    pub status: Status,
}

/// Runs every check behind the equivalence of
/// (1) `Φ(t) ≤ Ψ(Ct)` for all `t`,
/// (2) `L_Ψ ⊆ L_Φ`, probed with ball indicators,
/// (3) `‖f‖_Φ ≤ C‖f‖_Ψ` on sampled functions,
/// (4) `wL_Ψ ⊆ wL_Φ`, probed with ball indicators,
/// (5) `‖f‖_{wΦ} ≤ C‖f‖_{wΨ}` on sampled functions.
pub fn inclusion_verdict(
    phi: &YoungFunction,
    psi: &YoungFunction,
    cfg: &ToleranceConfig,
    inc: &InclusionConfig,
) -> Result<InclusionVerdict> {
    cfg.validate()?;
    inc.validate()?;
    let min_constant = find_min_constant(phi, psi, cfg)?;
    let (c, certified) = match &min_constant {
        MinConstant::Found { c, .. } => (*c, true),
        MinConstant::Inconclusive {
            grid_constant: Some(g),
            ..
        } => (*g, false),
        _ => (inc.probe_constant, false),
    };
    let cross_check = inverse_cross_check(phi, psi, c, cfg)?;
    let first = match &min_constant {
        MinConstant::Found { .. } => Status::from_bool(cross_check.agree && cross_check.forward.holds()),
        MinConstant::None { .. } => {
            debug_assert!(!dominates(phi, psi, c, cfg)?.holds());
            Status::Fails
        }
        MinConstant::Inconclusive { .. } => Status::Inconclusive,
    };

    let sweep = |kind| ball_sweep(phi, psi, c, inc.sweep_points, kind, cfg);
    let sampled = |kind| empirical_norm_inequality(phi, psi, c, &inc.samples, kind, cfg);
    let strong_sweep = sweep(NormKind::Strong)?;
    let strong_sampled = sampled(NormKind::Strong)?;
    let weak_sweep = sweep(NormKind::Weak)?;
    let weak_sampled = sampled(NormKind::Weak)?;

    let statements = vec![
        Statement {
            index: 1,
            claim: "Φ(t) ≤ Ψ(Ct) for every t > 0",
            status: first,
            evidence: Evidence::Certificate {
                min_constant,
                cross_check: Box::new(cross_check),
            },
        },
        Statement {
            index: 2,
            claim: "L_Ψ ⊆ L_Φ",
            status: Status::from_bool(strong_sweep.holds()),
            evidence: Evidence::BallSweep(strong_sweep),
        },
        Statement {
            index: 3,
            claim: "‖f‖_{L_Φ} ≤ C‖f‖_{L_Ψ}",
            status: Status::from_bool(strong_sampled.holds()),
            evidence: Evidence::Sampled(strong_sampled),
        },
        Statement {
            index: 4,
            claim: "wL_Ψ ⊆ wL_Φ",
            status: Status::from_bool(weak_sweep.holds()),
            evidence: Evidence::BallSweep(weak_sweep),
        },
        Statement {
            index: 5,
            claim: "‖f‖_{wL_Φ} ≤ C‖f‖_{wL_Ψ}",
            status: Status::from_bool(weak_sampled.holds()),
            evidence: Evidence::Sampled(weak_sampled),
        },
    ];
    let consistent = statements.iter().all(|s| s.status == statements[0].status);
    let status = if consistent { statements[0].status } else { Status::Inconclusive };
    Ok(InclusionVerdict {
        c,
        certified,
        statements,
        consistent,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(phi: YoungFunction, psi: YoungFunction) -> InclusionVerdict {
        let inc = InclusionConfig {
            samples: SampleSpec::with_seed(42, 40),
            ..Default::default()
        };
        inclusion_verdict(&phi, &psi, &ToleranceConfig::default(), &inc).unwrap()
    }

    #[test]
    fn certified_pair_all_hold() {
        let v = run(YoungFunction::power(2.0), YoungFunction::power(2.0).val_scale(0.25));
        assert!(v.certified && (v.c - 2.0).abs() < 1e-9);
        assert!(v.consistent && v.status == Status::Holds, "{v:#?}");
    }

    #[test]
    fn identical_pair_all_hold() {
        let v = run(YoungFunction::power_log(1.0, 1.0), YoungFunction::power_log(1.0, 1.0));
        assert!((v.c - 1.0).abs() < 1e-9);
        assert_eq!(v.status, Status::Holds);
    }

    #[test]
    fn mismatched_exponents_all_fail() {
        let v = run(YoungFunction::power(2.0), YoungFunction::power(1.0));
        assert!(!v.certified && v.consistent && v.status == Status::Fails, "{v:#?}");
    }
}
