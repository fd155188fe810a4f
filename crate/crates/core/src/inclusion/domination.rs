//! Certificates for `Φ(t) ≤ Ψ(Ct)` and the search for the least such `C`.
//!
//! A finite grid cannot certify a statement about every `t > 0`, so each
//! grid check is paired with a comparison of leading terms at the origin
//! and at infinity. When those terms are not recognized the verdict is
//! [`Verdict::Inconclusive`] even if the grid passes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{log_grid, ToleranceConfig};
use crate::error::{OrliczError, Result};
use crate::solver::monotone_infimum;
use crate::young::asymptotics::{
    compare_at_infinity, compare_at_zero, near_infinity, near_zero, order_at_infinity,
    order_at_zero, Comparison, Growth,
};
use crate::young::{YoungFunction, SATURATION};

/// Smallest and largest arguments probed when extending a grid outward.
const EXTENSION_FLOOR: f64 = 1e-300;
/// Relative slack for the inverse side of the equivalence; each inverse is
/// only accurate to `rel_tol`.
pub(crate) const INVERSE_SLACK: f64 = 1e-8;
/// The inverse side is sampled on `[1/S_SPAN, S_SPAN]`.
const S_SPAN: f64 = 1e150;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Mode {
    Everywhere,
    Eventually { t: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub t_min: f64,
    pub t_max: f64,
    pub count: usize,
}

/// Outcome of the leading-term comparison at one end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AsymptoticCheck {
    /// `Φ` is eventually strictly below `Ψ(C·)`.
    Holds,
    /// `Φ` is eventually strictly above `Ψ(C·)`.
    Fails,
    /// Leading terms coincide; the grid decides.
    Tie,
    /// Not part of this check (the origin side of eventual domination).
    NotApplicable,
    /// The expression tree is outside the recognized families.
    Unrecognized,
}

impl AsymptoticCheck {
    fn from_comparison(c: Option<Comparison>) -> Self {
        match c {
            Some(Comparison::Below) => AsymptoticCheck::Holds,
            Some(Comparison::Tie) => AsymptoticCheck::Tie,
            Some(Comparison::Above) => AsymptoticCheck::Fails,
            None => AsymptoticCheck::Unrecognized,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsymptoticNote {
    pub zero: AsymptoticCheck,
    pub infinity: AsymptoticCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSource {
    Grid,
    /// Found by extending the grid toward the end where asymptotics fail.
    Extension,
}

/// A point with `Φ(t) > Ψ(Ct)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub t: f64,
    pub phi: f64,
    pub psi_ct: f64,
    pub excess: f64,
    pub source: WitnessSource,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    /// `witness` is `None` only when the asymptotic failure sits beyond
    /// the representable range.
    Fails { witness: Option<Witness> },
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DominationCertificate {
    #[serde(rename = "C")]
    pub c: f64,
    pub mode: Mode,
    pub grid: GridSpec,
    /// `min (Ψ(Ct) − Φ(t)) / max(1, Φ(t))` over the grid.
    pub min_margin: f64,
    pub asymptotic: AsymptoticNote,
    pub verdict: Verdict,
}

impl DominationCertificate {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn fails(&self) -> bool {
        matches!(self.verdict, Verdict::Fails { .. })
    }

    pub fn witness(&self) -> Option<Witness> {
        match self.verdict {
            Verdict::Fails { witness } => witness,
            _ => None,
        }
    }
}

fn check_constant(name: &'static str, c: f64) -> Result<()> {
    if c.is_finite() && c > 0.0 {
        Ok(())
    } else {
        Err(OrliczError::InvalidArgument { name, value: c })
    }
}

/// Scaled margin at `t`, or `None` when both sides saturate.
fn margin(phi: &YoungFunction, psi: &YoungFunction, c: f64, t: f64) -> Option<(f64, f64, f64)> {
    let a = phi.eval_flagged(t);
    let b = psi.eval_flagged(c * t);
    if a.saturated && b.saturated {
        return None;
    }
    Some(((b.value - a.value) / a.value.max(1.0), a.value, b.value))
}

fn grid_scan(
    phi: &YoungFunction,
    psi: &YoungFunction,
    c: f64,
    grid: &[f64],
) -> (f64, Option<Witness>) {
    let mut min_margin = f64::INFINITY;
    let mut worst = None;
    for &t in grid {
        if let Some((m, a, b)) = margin(phi, psi, c, t) {
            if m < min_margin {
                min_margin = m;
                worst = Some(Witness {
                    t,
                    phi: a,
                    psi_ct: b,
                    excess: a - b,
                    source: WitnessSource::Grid,
                });
            }
        }
    }
    (min_margin, worst)
}

/// Walks outward from `start` by factors of 2 until `Φ(t) > Ψ(Ct)`.
fn extend(phi: &YoungFunction, psi: &YoungFunction, c: f64, start: f64, upward: bool) -> Option<Witness> {
    let mut t = start;
    loop {
        t = if upward { t * 2.0 } else { t * 0.5 };
        if !(EXTENSION_FLOOR..=SATURATION).contains(&t) {
            return None;
        }
        let a = phi.eval_flagged(t);
        let b = psi.eval_flagged(c * t);
        if a.saturated && b.saturated {
            return None;
        }
        if a.value > b.value && a.value > 0.0 {
            return Some(Witness {
                t,
                phi: a.value,
                psi_ct: b.value,
                excess: a.value - b.value,
                source: WitnessSource::Extension,
            });
        }
    }
}

fn asymptotics(phi: &YoungFunction, psi: &YoungFunction, c: f64, origin: bool) -> AsymptoticNote {
    let scaled = psi.clone().arg_scale(c);
    let infinity = AsymptoticCheck::from_comparison(
        near_infinity(phi)
            .zip(near_infinity(&scaled))
            .map(|(a, b)| compare_at_infinity(&a, &b)),
    );
    let zero = if origin {
        AsymptoticCheck::from_comparison(
            near_zero(phi)
                .zip(near_zero(&scaled))
                .map(|(a, b)| compare_at_zero(&a, &b)),
        )
    } else {
        AsymptoticCheck::NotApplicable
    };
    AsymptoticNote { zero, infinity }
}

fn certify(
    phi: &YoungFunction,
    psi: &YoungFunction,
    c: f64,
    mode: Mode,
    grid: Vec<f64>,
    cfg: &ToleranceConfig,
) -> DominationCertificate {
    let spec = GridSpec {
        t_min: grid[0],
        t_max: grid[grid.len() - 1],
        count: grid.len(),
    };
    let (min_margin, worst) = grid_scan(phi, psi, c, &grid);
    let asymptotic = asymptotics(phi, psi, c, mode == Mode::Everywhere);
    let verdict = if min_margin < -cfg.abs_tol {
        Verdict::Fails { witness: worst }
    } else if asymptotic.infinity == AsymptoticCheck::Fails {
        Verdict::Fails {
            witness: extend(phi, psi, c, spec.t_max, true),
        }
    } else if asymptotic.zero == AsymptoticCheck::Fails {
        Verdict::Fails {
            witness: extend(phi, psi, c, spec.t_min, false),
        }
    } else if asymptotic.zero == AsymptoticCheck::Unrecognized
        || asymptotic.infinity == AsymptoticCheck::Unrecognized
    {
        Verdict::Inconclusive
    } else {
        Verdict::Holds
    };
    DominationCertificate {
        c,
        mode,
        grid: spec,
        min_margin,
        asymptotic,
        verdict,
    }
}

/// Checks `Φ(t) ≤ Ψ(Ct)` for every `t > 0`.
pub fn dominates(
    phi: &YoungFunction,
    psi: &YoungFunction,
    c: f64,
    cfg: &ToleranceConfig,
) -> Result<DominationCertificate> {
    check_constant("C", c)?;
    cfg.validate()?;
    Ok(certify(phi, psi, c, Mode::Everywhere, cfg.grid(), cfg))
}

/// Checks `Φ(t) ≤ Ψ(Ct)` for every `t ≥ T`. The grid keeps the configured
/// density and starts at `T`; if `T` lies beyond the configured range the
/// grid keeps its width in log scale.
pub fn eventually_dominates(
    phi: &YoungFunction,
    psi: &YoungFunction,
    c: f64,
    t: f64,
    cfg: &ToleranceConfig,
) -> Result<DominationCertificate> {
    check_constant("C", c)?;
    check_constant("T", t)?;
    cfg.validate()?;
    let (t_min, t_max) = cfg.grid_range;
    let hi = if t < t_max { t_max } else { t * (t_max / t_min) };
    let grid = log_grid(t, hi, cfg.grid_points);
    Ok(certify(phi, psi, c, Mode::Eventually { t }, grid, cfg))
}

/// Result of the search for the least domination constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MinConstant {
    Found {
        #[serde(rename = "C")]
        c: f64,
        certificate: DominationCertificate,
    },
    /// No `C` works; `reason` names the end that rules it out.
    None { reason: String },
    /// The grid alone suggests `grid_constant` but the asymptotics of at
    /// least one function are not recognized.
    Inconclusive {
        grid_constant: Option<f64>,
        reason: String,
    },
}

impl MinConstant {
    pub fn constant(&self) -> Option<f64> {
        match self {
            MinConstant::Found { c, .. } => Some(*c),
            _ => None,
        }
    }
}

/// Reason no constant can work, judged from leading terms alone. Argument
/// scaling changes only coefficients of power terms and rates of
/// exponential ones, so an order gap of that kind cannot be closed by `C`.
fn ruled_out(phi: &Growth, psi: &Growth, at_infinity: bool) -> Option<String> {
    use std::cmp::Ordering;
    if at_infinity {
        let both_exp = matches!(
            (phi, psi),
            (Growth::Exponential { .. }, Growth::Exponential { .. })
        );
        (order_at_infinity(phi, psi) == Ordering::Greater && !both_exp)
            .then(|| "Φ grows faster than every Ψ(C·) at infinity".to_string())
    } else {
        (order_at_zero(phi, psi) == Ordering::Greater)
            .then(|| "Φ is larger than every Ψ(C·) near the origin".to_string())
    }
}

/// Least `C` with `Φ(t) ≤ Ψ(Ct)` for all `t > 0`, within `rel_tol`.
/// Domination is monotone in `C` because `Ψ` is nondecreasing, so the
/// search is a bisection; the feasible end of the final bracket is returned
/// together with its certificate.
pub fn find_min_constant(
    phi: &YoungFunction,
    psi: &YoungFunction,
    cfg: &ToleranceConfig,
) -> Result<MinConstant> {
    cfg.validate()?;
    let ends = (
        near_zero(phi).zip(near_zero(psi)),
        near_infinity(phi).zip(near_infinity(psi)),
    );
    let (Some((pz, qz)), Some((pi, qi))) = ends else {
        let grid = cfg.grid();
        let r = monotone_infimum(|c| Ok(grid_scan(phi, psi, c, &grid).0 >= -cfg.abs_tol), cfg)?;
        return Ok(MinConstant::Inconclusive {
            grid_constant: r.bracket.1.is_finite().then_some(r.bracket.1),
            reason: "leading terms of Φ or Ψ are not recognized".into(),
        });
    };
    if let Some(reason) = ruled_out(&pi, &qi, true).or_else(|| ruled_out(&pz, &qz, false)) {
        return Ok(MinConstant::None { reason });
    }
    let r = monotone_infimum(|c| Ok(dominates(phi, psi, c, cfg)?.holds()), cfg)?;
    if !r.bracket.1.is_finite() {
        return Ok(MinConstant::None {
            reason: format!("no C up to {:e} passes the grid", r.bracket.0),
        });
    }
    if !r.converged {
        return Err(OrliczError::NonConvergence {
            iterations: r.iterations,
            lo: r.bracket.0,
            hi: r.bracket.1,
        });
    }
    let c = r.bracket.1;
    Ok(MinConstant::Found {
        c,
        certificate: dominates(phi, psi, c, cfg)?,
    })
}

/// Both sides of `Φ(t) ≤ Ψ(Ct) ∀t  ⟺  CΦ⁻¹(s) ≥ Ψ⁻¹(s) ∀s`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InverseCrossCheck {
    #[serde(rename = "C")]
    pub c: f64,
    pub forward: DominationCertificate,
    pub inverse_holds: bool,
    /// An `s` with `CΦ⁻¹(s) < Ψ⁻¹(s)`, the worst one found.
    pub inverse_witness: Option<f64>,
    /// `min (CΦ⁻¹(s) − Ψ⁻¹(s)) / Ψ⁻¹(s)` over the s-grid.
    pub inverse_min_margin: f64,
    pub s_points: usize,
    pub agree: bool,
}

/// Log-spaced s-grid on `[1/S_SPAN, S_SPAN]` plus `s = 0`.
pub(crate) fn s_grid(cfg: &ToleranceConfig) -> Vec<f64> {
    let mut grid = vec![0.0];
    grid.extend(log_grid(1.0 / S_SPAN, S_SPAN, 2 * cfg.grid_points + 1));
    grid
}

/// Worst relative shortfall of `lhs(s) ≥ rhs(s)` on the s-grid.
pub(crate) fn inverse_scan<L, R>(cfg: &ToleranceConfig, lhs: L, rhs: R) -> Result<(f64, Option<f64>, usize)>
where
    L: Fn(f64) -> Result<f64> + Sync,
    R: Fn(f64) -> Result<f64> + Sync,
{
    let grid = s_grid(cfg);
    let margins = grid
        .par_iter()
        .map(|&s| {
            let (l, r) = (lhs(s)?, rhs(s)?);
            Ok(if r > 0.0 { (l - r) / r } else if l >= 0.0 { 0.0 } else { -1.0 })
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut min_margin = f64::INFINITY;
    let mut witness = None;
    for (&s, &m) in grid.iter().zip(&margins) {
        if m < min_margin {
            min_margin = m;
            if m < -INVERSE_SLACK {
                witness = Some(s);
            }
        }
    }
    Ok((min_margin, witness, grid.len()))
}

/// Evaluates `dominates` and, independently, `CΦ⁻¹(s) ≥ Ψ⁻¹(s)` on an
/// s-grid, and reports whether the two sides agree.
pub fn inverse_cross_check(
    phi: &YoungFunction,
    psi: &YoungFunction,
    c: f64,
    cfg: &ToleranceConfig,
) -> Result<InverseCrossCheck> {
    let forward = dominates(phi, psi, c, cfg)?;
    let (min_margin, witness, points) = inverse_scan(
        cfg,
        |s| Ok(c * phi.generalized_inverse(s, cfg)?),
        |s| psi.generalized_inverse(s, cfg),
    )?;
    let inverse_holds = min_margin >= -INVERSE_SLACK;
    let agree = match forward.verdict {
        Verdict::Holds => inverse_holds,
        Verdict::Fails { .. } => !inverse_holds,
        Verdict::Inconclusive => false,
    };
    Ok(InverseCrossCheck {
        c,
        forward,
        inverse_holds,
        inverse_witness: witness,
        inverse_min_margin: min_margin,
        s_points: points,
        agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn p(x: f64) -> YoungFunction {
        YoungFunction::power(x)
    }

    fn quarter_square() -> YoungFunction {
        p(2.0).val_scale(0.25)
    }

    #[test]
    fn identity_holds_with_zero_margin() {
        let c = dominates(&p(2.0), &p(2.0), 1.0, &cfg()).unwrap();
        assert!(c.holds());
        assert_eq!(c.min_margin, 0.0);
        assert_eq!(c.asymptotic.infinity, AsymptoticCheck::Tie);
    }

    #[test]
    fn scaled_square_holds_at_two() {
        let c = dominates(&p(2.0), &quarter_square(), 2.0, &cfg()).unwrap();
        assert!(c.holds(), "{c:?}");
        let below = dominates(&p(2.0), &quarter_square(), 1.99, &cfg()).unwrap();
        assert!(below.fails());
    }

    #[test]
    fn square_over_linear_fails_at_large_t() {
        for c in [1.0, 10.0, 1e4] {
            let cert = dominates(&p(2.0), &p(1.0), c, &cfg()).unwrap();
            let w = cert.witness().expect("witness");
            assert_eq!(w.source, WitnessSource::Grid);
            assert_eq!(w.t, cfg().grid_range.1);
            assert!(w.phi > w.psi_ct + cfg().abs_tol);
        }
    }

    #[test]
    fn failure_beyond_grid_found_by_extension() {
        // t² ≤ 1e9 t holds up to t = 1e9, past the grid end.
        let cert = dominates(&p(2.0), &p(1.0), 1e9, &cfg()).unwrap();
        let w = cert.witness().expect("witness");
        assert_eq!(w.source, WitnessSource::Extension);
        assert!(w.t > 1e9 && w.phi > w.psi_ct);
    }

    #[test]
    fn eventual_examples() {
        assert!(eventually_dominates(&p(1.0), &p(2.0), 1.0, 1.0, &cfg()).unwrap().holds());
        assert!(eventually_dominates(&p(2.0), &p(1.0), 1.0, 1.0, &cfg()).unwrap().fails());
        for t in [1e-3, 1.0, 1e9] {
            assert!(eventually_dominates(&p(3.0), &p(3.0), 1.0, t, &cfg()).unwrap().holds());
        }
        // t ≤ t² fails below 1 but the origin side is not examined.
        let e = eventually_dominates(&p(1.0), &p(2.0), 1.0, 1.0, &cfg()).unwrap();
        assert_eq!(e.asymptotic.zero, AsymptoticCheck::NotApplicable);
    }

    #[test]
    fn min_constant_examples() {
        let c = find_min_constant(&p(2.0), &quarter_square(), &cfg()).unwrap();
        assert!((c.constant().unwrap() - 2.0).abs() < 1e-9, "{c:?}");
        let id = find_min_constant(&YoungFunction::exp_minus_one(), &YoungFunction::exp_minus_one(), &cfg()).unwrap();
        assert!((id.constant().unwrap() - 1.0).abs() < 1e-9, "{id:?}");
        assert!(matches!(
            find_min_constant(&p(2.0), &p(1.0), &cfg()).unwrap(),
            MinConstant::None { .. }
        ));
        assert!(matches!(
            find_min_constant(&p(1.0), &p(2.0), &cfg()).unwrap(),
            MinConstant::None { .. }
        ));
    }

    #[test]
    fn min_constant_exponential_rates() {
        // e^t − 1 ≤ e^{Ct/2} − 1 iff C ≥ 2.
        let psi = YoungFunction::exp_minus_one().arg_scale(0.5);
        let c = find_min_constant(&YoungFunction::exp_minus_one(), &psi, &cfg()).unwrap();
        assert!((c.constant().unwrap() - 2.0).abs() < 1e-9, "{c:?}");
        // A polynomial never dominates an exponential.
        let none = find_min_constant(&YoungFunction::exp_minus_one(), &p(8.0), &cfg()).unwrap();
        assert!(matches!(none, MinConstant::None { .. }));
    }

    #[test]
    fn inverse_cross_check_examples() {
        let a = inverse_cross_check(&p(2.0), &p(2.0), 3.0, &cfg()).unwrap();
        assert!(a.forward.holds() && a.inverse_holds && a.agree);
        let b = inverse_cross_check(&p(2.0), &quarter_square(), 2.0, &cfg()).unwrap();
        assert!(b.forward.holds() && b.inverse_holds && b.agree, "{b:?}");
        let c = inverse_cross_check(&p(2.0), &p(1.0), 5.0, &cfg()).unwrap();
        assert!(c.forward.fails() && !c.inverse_holds && c.agree);
        assert!(c.inverse_witness.unwrap() > 25.0);
    }
}
