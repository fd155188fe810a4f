//! Modulars, Luxemburg norms and weak Orlicz quasi-norms.
//!
//! Simple functions are handled exactly (finite sums and a closed-form
//! supremum). Radial power functions go through an exponent criterion for
//! divergence first; finite modulars are then computed by layer-cake
//! quadrature `∫₀^∞ d_f(b Φ⁻¹(s)) ds`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::config::ToleranceConfig;
use crate::error::{OrliczError, Result};
use crate::funcspace::{unit_ball_volume, Distribution, Function, RadialPowerFunction, SimpleFunction, Support};
use crate::quadrature::{integrate, integrate_half_line, HalfLine};
use crate::solver::{maximize_log, monotone_infimum, Infimum};
use crate::young::asymptotics::{near_infinity, near_zero, Growth};
use crate::young::{YoungFunction, SATURATION};

const EXPONENT_EPS: f64 = 1e-12;

/// Result of a norm computation. `value` is `+∞` when no finite `b` is
/// feasible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormResult {
    pub value: f64,
    pub iterations: usize,
    pub bracket: (f64, f64),
    pub converged: bool,
}

impl NormResult {
    pub fn is_infinite(&self) -> bool {
        self.value.is_infinite()
    }

    fn zero() -> Self {
        NormResult {
            value: 0.0,
            iterations: 0,
            bracket: (0.0, 0.0),
            converged: true,
        }
    }

    fn infinite() -> Self {
        NormResult {
            value: f64::INFINITY,
            iterations: 0,
            bracket: (f64::INFINITY, f64::INFINITY),
            converged: true,
        }
    }
}

impl From<Infimum> for NormResult {
    fn from(r: Infimum) -> Self {
        NormResult {
            value: r.value,
            iterations: r.iterations,
            bracket: r.bracket,
            converged: r.converged,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct NormResultRepr {
    value: Option<f64>,
    infinite: bool,
    converged: bool,
    iterations: usize,
    bracket: (Option<f64>, Option<f64>),
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

impl Serialize for NormResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        NormResultRepr {
            value: finite(self.value),
            infinite: self.is_infinite(),
            converged: self.converged,
            iterations: self.iterations,
            bracket: (finite(self.bracket.0), finite(self.bracket.1)),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NormResult {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = NormResultRepr::deserialize(d)?;
        let inf = f64::INFINITY;
        Ok(NormResult {
            value: if r.infinite { inf } else { r.value.unwrap_or(inf) },
            iterations: r.iterations,
            bracket: (r.bracket.0.unwrap_or(inf), r.bracket.1.unwrap_or(inf)),
            converged: r.converged,
        })
    }
}

/// Where a radial modular diverges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DivergenceSide {
    /// The singularity at the origin is not integrable.
    Origin,
    /// The tail at infinity is not integrable.
    Infinity,
}

/// Value of `∫ Φ(|f|/b) dx` together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Modular {
    /// Finite sum over the cells of a simple function.
    Exact { value: f64 },
    /// Layer-cake quadrature with its error estimate.
    Quadrature { value: f64, abs_error: f64 },
    /// Certified `+∞` by the growth-exponent criterion.
    Divergent { side: DivergenceSide },
    /// Quadrature window contributions stopped decaying near `at`.
    TailGrowth { at: f64 },
}

impl Modular {
    pub fn value(&self) -> f64 {
        match self {
            Modular::Exact { value } | Modular::Quadrature { value, .. } => *value,
            Modular::Divergent { .. } | Modular::TailGrowth { .. } => f64::INFINITY,
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.value().is_infinite()
    }
}

fn check_scale(b: f64) -> Result<()> {
    if b.is_finite() && b > 0.0 {
        Ok(())
    } else {
        Err(OrliczError::InvalidArgument { name: "b", value: b })
    }
}

/// `Σ Φ(c_i / b) m_i`; `+∞` once any term saturates.
pub fn simple_modular(f: &SimpleFunction, phi: &YoungFunction, b: f64) -> f64 {
    let mut total = 0.0;
    for (m, v) in f.cells().filter(|&(_, v)| v > 0.0) {
        let e = phi.eval_flagged(v / b);
        if e.saturated {
            return f64::INFINITY;
        }
        total += e.value * m;
    }
    total
}

/// Exponent criterion for `∫ Φ(c|x|^{-α}/b) dx`; independent of `b`.
/// `None` means the tree's asymptotics were not recognized.
fn radial_divergence(f: &RadialPowerFunction, phi: &YoungFunction) -> Option<Option<DivergenceSide>> {
    let beta = f.decay_exponent();
    let touches_origin = match f.support() {
        Support::Global => true,
        Support::Annulus { r_in, .. } => r_in == 0.0,
    };
    if touches_origin {
        // f → ∞ near the origin; Φ(u) ~ u^p (ln u)^q converges iff p < n/α.
        let converges = match near_infinity(phi)? {
            Growth::Power { exponent, .. } => exponent < beta * (1.0 - EXPONENT_EPS),
            Growth::Exponential { .. } => false,
            Growth::Vanishing => true,
        };
        if !converges {
            return Some(Some(DivergenceSide::Origin));
        }
    }
    if f.support() == Support::Global {
        // f → 0 at infinity; Φ(u) ~ u^p near 0 converges iff p > n/α.
        let converges = match near_zero(phi)? {
            Growth::Vanishing => true,
            Growth::Power { exponent, .. } => exponent > beta * (1.0 + EXPONENT_EPS),
            Growth::Exponential { .. } => false,
        };
        if !converges {
            return Some(Some(DivergenceSide::Infinity));
        }
    }
    Some(None)
}

/// Layer-cake quadrature `∫₀^∞ d_f(b Φ⁻¹(s)) ds` for any distribution,
/// without the exponent pre-check. Bounded integrands on a finite range use
/// plain adaptive quadrature; everything else goes through the expanding
/// log-window integrator with tail monitoring.
pub fn layer_cake_modular<D: Distribution + ?Sized>(
    f: &D,
    phi: &YoungFunction,
    b: f64,
    cfg: &ToleranceConfig,
) -> Result<Modular> {
    check_scale(b)?;
    let sup = f.ess_sup();
    let upper = if sup.is_finite() {
        let top = phi.eval_flagged(sup / b);
        if top.saturated {
            f64::INFINITY
        } else {
            top.value
        }
    } else {
        f64::INFINITY
    };
    if upper == 0.0 {
        return Ok(Modular::Quadrature {
            value: 0.0,
            abs_error: 0.0,
        });
    }
    let integrand = |s: f64| {
        if s >= SATURATION {
            return 0.0;
        }
        match phi.inverse_unchecked(s, cfg) {
            Ok(r) => f.distribution(b * r),
            Err(_) => 0.0,
        }
    };
    let bounded = f.distribution(0.0).is_finite();
    if upper.is_finite() && bounded {
        // The integrand is a step function of s when f is simple; a single
        // panel can straddle a narrow step without sampling it, so split at
        // every jump.
        let mut cuts: Vec<f64> = f
            .jumps()
            .into_iter()
            .map(|v| phi.eval(v / b))
            .filter(|&s| s > 0.0 && s < upper)
            .collect();
        cuts.push(0.0);
        cuts.push(upper);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut value = 0.0;
        let mut abs_error = 0.0;
        for w in cuts.windows(2) {
            let r = integrate(integrand, w[0], w[1], 1e-300, 1e-10, 50_000);
            if !r.converged {
                return Err(OrliczError::Quadrature(format!(
                    "layer-cake integral on [{}, {}] stalled at {} ± {}",
                    w[0], w[1], r.value, r.abs_error
                )));
            }
            value += r.value;
            abs_error += r.abs_error;
        }
        return Ok(Modular::Quadrature { value, abs_error });
    }
    let pivot = if upper.is_finite() { upper.min(1.0) } else { 1.0 };
    match integrate_half_line(integrand, pivot, upper, 1e-10) {
        HalfLine::Converged(r) => Ok(Modular::Quadrature {
            value: r.value,
            abs_error: r.abs_error,
        }),
        HalfLine::NotDecaying { at, .. } => Ok(Modular::TailGrowth { at }),
        HalfLine::Exhausted { partial } => Err(OrliczError::Quadrature(format!(
            "layer-cake window reached the representable range (partial value {partial})"
        ))),
    }
}

/// `∫ Φ(|f(x)|/b) dx`.
pub fn modular(f: &Function, phi: &YoungFunction, b: f64, cfg: &ToleranceConfig) -> Result<Modular> {
    check_scale(b)?;
    match f {
        Function::Simple(s) => Ok(Modular::Exact {
            value: simple_modular(s, phi, b),
        }),
        Function::RadialPower(r) => {
            if let Some(Some(side)) = radial_divergence(r, phi) {
                return Ok(Modular::Divergent { side });
            }
            layer_cake_modular(r, phi, b, cfg)
        }
    }
}

/// Luxemburg norm `inf { b > 0 : ∫ Φ(|f|/b) ≤ 1 }`.
pub fn luxemburg_norm(f: &Function, phi: &YoungFunction, cfg: &ToleranceConfig) -> Result<NormResult> {
    cfg.validate()?;
    if f.is_zero() {
        return Ok(NormResult::zero());
    }
    if let Function::RadialPower(r) = f {
        if let Some(Some(_)) = radial_divergence(r, phi) {
            return Ok(NormResult::infinite());
        }
    }
    let r = monotone_infimum(|b| Ok(modular(f, phi, b, cfg)?.value() <= 1.0), cfg)?;
    Ok(r.into())
}

/// `max_k Φ(c_k/b) · |{f ≥ c_k}|` over the distinct positive levels.
pub fn simple_weak_sup(f: &SimpleFunction, phi: &YoungFunction, b: f64) -> f64 {
    f.level_tails()
        .into_iter()
        .map(|(level, tail)| phi.eval(level / b) * tail)
        .fold(0.0, f64::max)
}

/// `Some(limit)` of `Φ(t) t^{-β}` as `t → ∞`, `None` if it diverges.
fn limit_at_infinity(phi: &YoungFunction, beta: f64) -> Option<f64> {
    match near_infinity(phi) {
        Some(Growth::Power {
            exponent,
            log_power,
            coef,
        }) => {
            if exponent < beta * (1.0 - EXPONENT_EPS) {
                Some(0.0)
            } else if exponent > beta * (1.0 + EXPONENT_EPS) || log_power > 0.0 {
                None
            } else {
                Some(coef)
            }
        }
        Some(Growth::Vanishing) => Some(0.0),
        Some(Growth::Exponential { .. }) | None => None,
    }
}

/// `Some(limit)` of `Φ(t) t^{-β}` as `t → 0`, `None` if it diverges.
fn limit_at_zero(phi: &YoungFunction, beta: f64) -> Option<f64> {
    match near_zero(phi) {
        Some(Growth::Vanishing) => Some(0.0),
        Some(Growth::Power { exponent, coef, .. }) => {
            if exponent > beta * (1.0 + EXPONENT_EPS) {
                Some(0.0)
            } else if exponent < beta * (1.0 - EXPONENT_EPS) {
                None
            } else {
                Some(coef)
            }
        }
        Some(Growth::Exponential { .. }) | None => None,
    }
}

fn radial_weak_sup(f: &RadialPowerFunction, phi: &YoungFunction, b: f64, cfg: &ToleranceConfig) -> f64 {
    let beta = f.decay_exponent();
    let vn = unit_ball_volume(f.dim());
    let scale = f.c() / b;
    // For |x| in the interior of the support, d_f(bt) = v_n (scale/t)^β − inner.
    let tail_const = vn * scale.powf(beta);
    let (t_min, t_max) = cfg.grid_range;
    let product = |t: f64| phi.eval(t) * f.distribution(b * t);
    match f.support() {
        Support::Global => {
            if let Some((a, p)) = phi.as_power_law() {
                return if (p - beta).abs() <= EXPONENT_EPS * beta {
                    a * tail_const
                } else {
                    f64::INFINITY
                };
            }
            let (Some(l0), Some(linf)) = (limit_at_zero(phi, beta), limit_at_infinity(phi, beta)) else {
                return f64::INFINITY;
            };
            let (_, inner) = maximize_log(product, t_min * scale, t_max * scale, cfg.grid_points);
            inner.max(l0 * tail_const).max(linf * tail_const)
        }
        Support::Annulus { r_in, r_out } => {
            let t_a = scale * r_out.powf(-f.alpha());
            let plateau = phi.eval(t_a) * f.distribution(0.0);
            if r_in > 0.0 {
                let t_b = scale * r_in.powf(-f.alpha());
                let (_, inner) = maximize_log(product, t_a, t_b, cfg.grid_points);
                plateau.max(inner)
            } else {
                let Some(linf) = limit_at_infinity(phi, beta) else {
                    return f64::INFINITY;
                };
                let (_, inner) = maximize_log(product, t_a, t_a * (t_max / t_min), cfg.grid_points);
                plateau.max(inner).max(linf * tail_const)
            }
        }
    }
}

/// `sup_{t>0} Φ(t) |{|f|/b > t}|`.
pub fn weak_sup(f: &Function, phi: &YoungFunction, b: f64, cfg: &ToleranceConfig) -> Result<f64> {
    check_scale(b)?;
    Ok(match f {
        Function::Simple(s) => simple_weak_sup(s, phi, b),
        Function::RadialPower(r) => radial_weak_sup(r, phi, b, cfg),
    })
}

/// Weak Orlicz quasi-norm `inf { b > 0 : sup_t Φ(t) |{|f|/b > t}| ≤ 1 }`.
pub fn weak_norm(f: &Function, phi: &YoungFunction, cfg: &ToleranceConfig) -> Result<NormResult> {
    cfg.validate()?;
    if f.is_zero() {
        return Ok(NormResult::zero());
    }
    if let Function::RadialPower(_) = f {
        // Radial divergence is decided by exponents alone, so it holds at every b.
        if weak_sup(f, phi, 1.0, cfg)?.is_infinite() {
            return Ok(NormResult::infinite());
        }
    }
    let r = monotone_infimum(|b| Ok(weak_sup(f, phi, b, cfg)? <= 1.0), cfg)?;
    Ok(r.into())
}

/// `1 / Φ⁻¹(1 / measure)`, the norm of an indicator of a set of the given
/// measure in both the strong and the weak space.
pub fn char_norm_closed_form(phi: &YoungFunction, measure: f64, cfg: &ToleranceConfig) -> Result<f64> {
    if !(measure.is_finite() && measure > 0.0) {
        return Err(OrliczError::InvalidArgument {
            name: "measure",
            value: measure,
        });
    }
    let inv = phi.generalized_inverse(1.0 / measure, cfg)?;
    if inv == 0.0 {
        return Err(OrliczError::Precondition(format!(
            "Φ⁻¹(1/{measure}) underflows to zero"
        )));
    }
    Ok(1.0 / inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::{char_function, Ball};
    use std::f64::consts::SQRT_2;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn two_chi() -> Function {
        SimpleFunction::from_cells(&[(2.0, 2.0)]).unwrap().into()
    }

    fn sqrt_radial() -> Function {
        RadialPowerFunction::global(1.0, 0.5, 1).unwrap().into()
    }

    #[test]
    fn modular_examples() {
        let sq = YoungFunction::power(2.0);
        assert_eq!(modular(&two_chi(), &sq, 1.0, &cfg()).unwrap().value(), 8.0);
        let m = modular(&two_chi(), &sq, 2.0 * SQRT_2, &cfg()).unwrap().value();
        assert!((m - 1.0).abs() < 1e-15);
        for b in [0.1, 1.0, 10.0] {
            assert!(modular(&sqrt_radial(), &sq, b, &cfg()).unwrap().is_infinite());
        }
        assert!(modular(&two_chi(), &sq, 0.0, &cfg()).is_err());
    }

    #[test]
    fn luxemburg_examples() {
        let sq = YoungFunction::power(2.0);
        let chi: Function = char_function(&Ball::centered(1, 1.0).unwrap()).into();
        let r = luxemburg_norm(&chi, &sq, &cfg()).unwrap();
        assert!(r.converged);
        assert!((r.value - SQRT_2).abs() < 1e-9);
        let r = luxemburg_norm(&two_chi(), &sq, &cfg()).unwrap();
        assert!((r.value - 2.0 * SQRT_2).abs() < 1e-9);
        let zero: Function = SimpleFunction::zero().into();
        assert_eq!(luxemburg_norm(&zero, &YoungFunction::exp_minus_one(), &cfg()).unwrap().value, 0.0);
    }

    #[test]
    fn norm_result_bracket_invariant() {
        let c = cfg();
        let f: Function = SimpleFunction::from_cells(&[(0.3, 5.0), (2.0, 0.7), (11.0, 0.01)])
            .unwrap()
            .into();
        for phi in [
            YoungFunction::power(1.5),
            YoungFunction::exp_minus_one(),
            YoungFunction::power_log(1.0, 2.0),
        ] {
            let r = luxemburg_norm(&f, &phi, &c).unwrap();
            assert!(r.converged);
            let above = modular(&f, &phi, r.value * (1.0 + c.rel_tol), &c).unwrap().value();
            let below = modular(&f, &phi, r.value * (1.0 - c.rel_tol), &c).unwrap().value();
            assert!(above <= 1.0 && below >= 1.0, "{phi:?}: {above} {below}");
        }
    }

    #[test]
    fn weak_sup_examples() {
        let sq = YoungFunction::power(2.0);
        let chi2: Function = SimpleFunction::from_cells(&[(2.0, 1.0)]).unwrap().into();
        assert_eq!(weak_sup(&chi2, &sq, 1.0, &cfg()).unwrap(), 2.0);
        let v = weak_sup(&chi2, &sq, SQRT_2, &cfg()).unwrap();
        assert!((v - 1.0).abs() < 1e-15);
        let v = weak_sup(&sqrt_radial(), &sq, 1.0, &cfg()).unwrap();
        assert!((v - 2.0).abs() < 1e-14);
    }

    #[test]
    fn weak_sup_simple_matches_brute_force() {
        let f = SimpleFunction::from_cells(&[(1.0, 3.0), (0.5, 1.0), (4.0, 0.2), (2.0, 3.0)]).unwrap();
        for phi in [YoungFunction::power(2.0), YoungFunction::exp_minus_one()] {
            for b in [0.3, 1.0, 4.0] {
                let closed = simple_weak_sup(&f, &phi, b);
                let mut brute: f64 = 0.0;
                for i in 0..100_000 {
                    let t = 1e-4 * (1e8f64).powf(i as f64 / 99_999.0);
                    brute = brute.max(phi.eval(t) * f.distribution(b * t));
                }
                for (level, _) in f.level_tails() {
                    let t = level / b * (1.0 - 1e-12);
                    brute = brute.max(phi.eval(t) * f.distribution(b * t));
                }
                assert!((closed - brute).abs() <= 1e-6 * closed, "{closed} vs {brute}");
            }
        }
    }

    #[test]
    fn weak_norm_examples() {
        let sq = YoungFunction::power(2.0);
        let chi: Function = char_function(&Ball::centered(1, 1.0).unwrap()).into();
        let r = weak_norm(&chi, &sq, &cfg()).unwrap();
        assert!((r.value - SQRT_2).abs() < 1e-9);
        let r = weak_norm(&sqrt_radial(), &sq, &cfg()).unwrap();
        assert!((r.value - SQRT_2).abs() < 1e-9, "{r:?}");
        let zero: Function = SimpleFunction::zero().into();
        assert_eq!(weak_norm(&zero, &sq, &cfg()).unwrap().value, 0.0);
    }

    #[test]
    fn weak_norm_radial_mismatch_is_infinite() {
        let r = weak_norm(&sqrt_radial(), &YoungFunction::power(3.0), &cfg()).unwrap();
        assert!(r.is_infinite());
        let r = weak_norm(&sqrt_radial(), &YoungFunction::exp_minus_one(), &cfg()).unwrap();
        assert!(r.is_infinite());
    }

    #[test]
    fn char_norm_closed_form_examples() {
        let c = cfg();
        let v = char_norm_closed_form(&YoungFunction::power(2.0), 2.0, &c).unwrap();
        assert!((v - SQRT_2).abs() < 1e-9);
        let v = char_norm_closed_form(&YoungFunction::power(3.0), 8.0, &c).unwrap();
        assert!((v - 2.0).abs() < 1e-9);
        let v = char_norm_closed_form(&YoungFunction::power(1.0), 1.0, &c).unwrap();
        assert!((v - 1.0).abs() < 1e-9);
        assert!(char_norm_closed_form(&YoungFunction::power(1.0), 0.0, &c).is_err());
    }

    #[test]
    fn annulus_modular_matches_radial_integral() {
        // ∫_{0.5<|x|<2} (|x|^{-1}/b)² dx in ℝ² = 2π ln 4 / b².
        let f: Function = RadialPowerFunction::new(1.0, 1.0, 2, Support::Annulus { r_in: 0.5, r_out: 2.0 })
            .unwrap()
            .into();
        let sq = YoungFunction::power(2.0);
        for b in [0.5, 1.0, 3.0] {
            let expected = 2.0 * std::f64::consts::PI * 4f64.ln() / (b * b);
            let got = modular(&f, &sq, b, &cfg()).unwrap();
            assert!(matches!(got, Modular::Quadrature { .. }));
            assert!((got.value() - expected).abs() < 1e-7 * expected, "{got:?} vs {expected}");
        }
    }

    #[test]
    fn global_radial_finite_modular_with_vanishing_young() {
        // Φ = max(0, t - 1), f = |x|^{-1/2} on ℝ: ∫_{|x|<b^{-2}} (|x|^{-1/2}/b - 1) dx = 2/b².
        let relu = YoungFunction::pwl(vec![[0.0, 0.0], [1.0, 0.0], [2.0, 1.0]]).unwrap();
        for b in [0.5, 1.0, 2.0] {
            let got = modular(&sqrt_radial(), &relu, b, &cfg()).unwrap();
            let expected = 2.0 / (b * b);
            assert!((got.value() - expected).abs() < 1e-6 * expected, "{got:?} vs {expected}");
        }
        let r = luxemburg_norm(&sqrt_radial(), &relu, &cfg()).unwrap();
        assert!((r.value - SQRT_2).abs() < 1e-6, "{r:?}");
    }

    #[test]
    fn divergent_radial_reports_side() {
        let f: Function = RadialPowerFunction::global(1.0, 2.0, 1).unwrap().into();
        // n/α = 1/2: Φ = t near infinity has p = 1 > 1/2, diverges at origin.
        assert_eq!(
            modular(&f, &YoungFunction::power(1.0), 1.0, &cfg()).unwrap(),
            Modular::Divergent {
                side: DivergenceSide::Origin
            }
        );
        let g: Function = RadialPowerFunction::global(1.0, 0.5, 1).unwrap().into();
        // n/α = 2: Φ = t³ has p = 3 > 2 at origin side, diverges there too.
        assert!(modular(&g, &YoungFunction::power(3.0), 1.0, &cfg()).unwrap().is_infinite());
    }

    #[test]
    fn saturated_modular_is_infinite() {
        let f = SimpleFunction::from_cells(&[(0.6, 1000.0)]).unwrap();
        let phi = YoungFunction::exp_minus_one();
        assert_eq!(simple_modular(&f, &phi, 1.0), f64::INFINITY);
        assert!(layer_cake_modular(&f, &phi, 1.0, &cfg()).unwrap().is_infinite());
    }

    #[test]
    fn layer_cake_sees_narrow_steps() {
        // The step at Φ(v/b) ≈ 6e-3 is far below the first quadrature node
        // of [0, 2.5] and is only found by splitting at the jumps.
        let f = SimpleFunction::from_cells(&[
            (22.104439779912738, 0.0027823024736274965),
            (6.657992552510372, 0.00035221300820379836),
            (0.34093473942697267, 0.15213051920217208),
            (0.3209237177575113, 0.00035342706171726966),
        ])
        .unwrap();
        let phi = YoungFunction::power(1.5);
        let b = 0.08209065340270172;
        let exact = simple_modular(&f, &phi, b);
        let quad = layer_cake_modular(&f, &phi, b, &cfg()).unwrap().value();
        assert!((exact - quad).abs() <= 1e-9 * exact, "{exact} vs {quad}");
    }

    #[test]
    fn layer_cake_detects_tail_growth_without_pre_check() {
        // Bypassing the exponent criterion, quadrature alone must refuse to
        // report a finite value for ∫ |x|^{-1} dx on ℝ.
        let r = RadialPowerFunction::global(1.0, 0.5, 1).unwrap();
        let got = layer_cake_modular(&r, &YoungFunction::power(2.0), 1.0, &cfg()).unwrap();
        assert!(matches!(got, Modular::TailGrowth { .. }), "{got:?}");
    }

    #[test]
    fn norm_result_json() {
        let r = NormResult {
            value: 1.5,
            iterations: 37,
            bracket: (1.4, 1.6),
            converged: true,
        };
        let v: serde_json::Value = serde_json::to_value(r).unwrap();
        assert_eq!(v["value"], 1.5);
        assert_eq!(v["infinite"], false);
        assert_eq!(v["iterations"], 37);
        let inf = serde_json::to_value(NormResult::infinite()).unwrap();
        assert!(inf["value"].is_null());
        assert_eq!(inf["infinite"], true);
        let back: NormResult = serde_json::from_value(inf).unwrap();
        assert!(back.is_infinite());
    }
}
