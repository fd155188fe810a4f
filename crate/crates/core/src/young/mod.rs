//! Young functions: construction, evaluation, validation and generalized
//! inversion.
//!
//! A [`YoungFunction`] is an immutable expression tree over a handful of
//! convex primitives. Evaluation saturates at [`SATURATION`] instead of
//! producing non-finite values so that bracketing searches stay well defined
//! near the edge of the representable range.

pub mod asymptotics;

use serde::{Deserialize, Serialize};

use crate::config::ToleranceConfig;
use crate::error::{OrliczError, Result};

/// Evaluations are clamped to this value and flagged as saturated.
pub const SATURATION: f64 = 1e300;

/// `Φ(t)` must exceed this at some probe point for the unboundedness check.
const UNBOUNDED_THRESHOLD: f64 = 1e6;

/// Largest bracketing step factor in the inverse search.
const MAX_STEP: f64 = 1e100;

/// Symbolic convex function `Φ: [0, ∞) → [0, ∞)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum YoungFunction {
    /// `t^p`.
    Power { p: f64 },
    /// `e^t - 1`.
    ExpMinusOne,
    /// `t^p · ln(1 + t)^q`.
    PowerLog { p: f64, q: f64 },
    /// Piecewise linear interpolation of `(t, y)` breakpoints starting at
    /// `(0, 0)`, extended past the last breakpoint with the last slope.
    Pwl { points: Vec<[f64; 2]> },
    /// `t ↦ Φ(k t)`.
    ArgScale { k: f64, inner: Box<YoungFunction> },
    /// `t ↦ c Φ(t)`.
    ValScale { c: f64, inner: Box<YoungFunction> },
    Sum { terms: Vec<YoungFunction> },
    Max { terms: Vec<YoungFunction> },
}

/// A saturating evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Evaluation {
    pub value: f64,
    pub saturated: bool,
}

impl YoungFunction {
    pub fn power(p: f64) -> Self {
        YoungFunction::Power { p }
    }

    pub fn exp_minus_one() -> Self {
        YoungFunction::ExpMinusOne
    }

    pub fn power_log(p: f64, q: f64) -> Self {
        YoungFunction::PowerLog { p, q }
    }

    /// Piecewise linear function through `points`; the breakpoints are
    /// checked structurally but convexity is left to [`validate_young`].
    pub fn pwl(points: Vec<[f64; 2]>) -> Result<Self> {
        let phi = YoungFunction::Pwl { points };
        phi.check_structure()?;
        Ok(phi)
    }

    pub fn arg_scale(self, k: f64) -> Self {
        YoungFunction::ArgScale {
            k,
            inner: Box::new(self),
        }
    }

    pub fn val_scale(self, c: f64) -> Self {
        YoungFunction::ValScale {
            c,
            inner: Box::new(self),
        }
    }

    pub fn sum(terms: Vec<YoungFunction>) -> Self {
        YoungFunction::Sum { terms }
    }

    pub fn max(terms: Vec<YoungFunction>) -> Self {
        YoungFunction::Max { terms }
    }

    /// Checks parameter domains of every node. Convexity and the other
    /// Young axioms are sampled by [`validate_young`] instead.
    pub fn check_structure(&self) -> Result<()> {
        self.check_at("$")
    }

    fn check_at(&self, path: &str) -> Result<()> {
        let fail = |field: &str, reason: String| {
            Err(OrliczError::MalformedYoung {
                path: format!("{path}.{field}"),
                reason,
            })
        };
        let positive = |x: f64| x.is_finite() && x > 0.0;
        match self {
            YoungFunction::Power { p } => {
                if !positive(*p) {
                    return fail("p", format!("exponent must be positive and finite, got {p}"));
                }
            }
            YoungFunction::ExpMinusOne => {}
            YoungFunction::PowerLog { p, q } => {
                if !positive(*p) {
                    return fail("p", format!("exponent must be positive and finite, got {p}"));
                }
                if !(q.is_finite() && *q >= 0.0) {
                    return fail("q", format!("log exponent must be nonnegative, got {q}"));
                }
            }
            YoungFunction::Pwl { points } => {
                if points.len() < 2 {
                    return fail("points", "need at least two breakpoints".into());
                }
                if points[0] != [0.0, 0.0] {
                    return fail("points[0]", "first breakpoint must be (0, 0)".into());
                }
                for (i, w) in points.windows(2).enumerate() {
                    let [t0, _] = w[0];
                    let [t1, y1] = w[1];
                    if !(t1.is_finite() && y1.is_finite()) {
                        return fail(&format!("points[{}]", i + 1), "non-finite breakpoint".into());
                    }
                    if t1 <= t0 {
                        return fail(
                            &format!("points[{}]", i + 1),
                            "breakpoints must have strictly increasing t".into(),
                        );
                    }
                }
            }
            YoungFunction::ArgScale { k, inner } => {
                if !positive(*k) {
                    return fail("k", format!("argument scale must be positive, got {k}"));
                }
                inner.check_at(&format!("{path}.inner"))?;
            }
            YoungFunction::ValScale { c, inner } => {
                if !positive(*c) {
                    return fail("c", format!("value scale must be positive, got {c}"));
                }
                inner.check_at(&format!("{path}.inner"))?;
            }
            YoungFunction::Sum { terms } | YoungFunction::Max { terms } => {
                if terms.is_empty() {
                    return fail("terms", "combinator needs at least one term".into());
                }
                for (i, term) in terms.iter().enumerate() {
                    term.check_at(&format!("{path}.terms[{i}]"))?;
                }
            }
        }
        Ok(())
    }

    fn eval_raw(&self, t: f64) -> f64 {
        match self {
            YoungFunction::Power { p } => t.powf(*p),
            YoungFunction::ExpMinusOne => t.exp_m1(),
            YoungFunction::PowerLog { p, q } => {
                if t == 0.0 {
                    0.0
                } else {
                    t.powf(*p) * t.ln_1p().powf(*q)
                }
            }
            YoungFunction::Pwl { points } => eval_pwl(points, t),
            YoungFunction::ArgScale { k, inner } => inner.eval_raw(k * t),
            YoungFunction::ValScale { c, inner } => c * inner.eval_raw(t),
            YoungFunction::Sum { terms } => terms.iter().map(|f| f.eval_raw(t)).sum(),
            YoungFunction::Max { terms } => terms
                .iter()
                .map(|f| f.eval_raw(t))
                .fold(0.0, f64::max),
        }
    }

    /// Saturating evaluation without argument checks, for solver inner loops.
    #[inline]
    pub(crate) fn eval(&self, t: f64) -> f64 {
        self.eval_flagged(t).value
    }

    pub(crate) fn eval_flagged(&self, t: f64) -> Evaluation {
        let v = self.eval_raw(t);
        if v < SATURATION {
            Evaluation {
                value: v,
                saturated: false,
            }
        } else {
            Evaluation {
                value: SATURATION,
                saturated: true,
            }
        }
    }

    /// `Φ(t)` for finite `t ≥ 0`.
    pub fn evaluate(&self, t: f64) -> Result<f64> {
        Ok(self.evaluate_flagged(t)?.value)
    }

    pub fn evaluate_flagged(&self, t: f64) -> Result<Evaluation> {
        check_nonneg("t", t)?;
        Ok(self.eval_flagged(t))
    }

    /// Right end of the zero set `{t : Φ(t) = 0}`, read off the tree.
    /// Infinite when the function vanishes identically.
    pub fn zero_set_end(&self) -> f64 {
        match self {
            YoungFunction::Power { .. }
            | YoungFunction::ExpMinusOne
            | YoungFunction::PowerLog { .. } => 0.0,
            YoungFunction::Pwl { points } => match points.iter().position(|&[_, y]| y != 0.0) {
                Some(j) => points[j - 1][0],
                None => f64::INFINITY,
            },
            YoungFunction::ArgScale { k, inner } => inner.zero_set_end() / k,
            YoungFunction::ValScale { inner, .. } => inner.zero_set_end(),
            YoungFunction::Sum { terms } | YoungFunction::Max { terms } => terms
                .iter()
                .map(YoungFunction::zero_set_end)
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// `Some((a, p))` when the tree is exactly `a · t^p`.
    pub fn as_power_law(&self) -> Option<(f64, f64)> {
        match self {
            YoungFunction::Power { p } => Some((1.0, *p)),
            YoungFunction::PowerLog { p, q } if *q == 0.0 => Some((1.0, *p)),
            YoungFunction::Pwl { points } if points.len() == 2 => {
                Some((points[1][1] / points[1][0], 1.0))
            }
            YoungFunction::ArgScale { k, inner } => {
                inner.as_power_law().map(|(a, p)| (a * k.powf(p), p))
            }
            YoungFunction::ValScale { c, inner } => inner.as_power_law().map(|(a, p)| (a * c, p)),
            YoungFunction::Sum { terms } | YoungFunction::Max { terms } => {
                let laws: Option<Vec<_>> = terms.iter().map(|f| f.as_power_law()).collect();
                let laws = laws?;
                let p = laws[0].1;
                if laws.iter().any(|&(_, q)| q != p) {
                    return None;
                }
                let coef = if matches!(self, YoungFunction::Sum { .. }) {
                    laws.iter().map(|&(a, _)| a).sum()
                } else {
                    laws.iter().map(|&(a, _)| a).fold(0.0, f64::max)
                };
                Some((coef, p))
            }
            _ => None,
        }
    }

    /// Generalized inverse `Φ⁻¹(s) = inf { r ≥ 0 : Φ(r) > s }`.
    pub fn generalized_inverse(&self, s: f64, cfg: &ToleranceConfig) -> Result<f64> {
        check_nonneg("s", s)?;
        self.inverse_unchecked(s, cfg)
    }

    pub(crate) fn inverse_unchecked(&self, s: f64, cfg: &ToleranceConfig) -> Result<f64> {
        if s == 0.0 {
            // Floating underflow makes the numeric search useless here; the
            // zero set is exact.
            let z = self.zero_set_end();
            return if z.is_finite() {
                Ok(z)
            } else {
                Err(OrliczError::InverseOverflow { s })
            };
        }
        if s >= SATURATION {
            return Err(OrliczError::InverseOverflow { s });
        }
        // Invariant: Φ(lo) ≤ s < Φ(hi). The bracket is found with step
        // factors that square on every miss, then narrowed geometrically to a
        // factor of two, so extreme s costs a few dozen evaluations.
        let (mut lo, mut hi);
        let mut step: f64 = 2.0;
        if self.eval(1.0) > s {
            hi = 1.0;
            loop {
                lo = hi / step;
                if lo == 0.0 {
                    return Ok(0.0);
                }
                if self.eval(lo) <= s {
                    break;
                }
                hi = lo;
                step = (step * step).min(MAX_STEP);
            }
        } else {
            lo = 1.0;
            loop {
                hi = (lo * step).min(f64::MAX);
                if self.eval(hi) > s {
                    break;
                }
                if hi == f64::MAX {
                    return Err(OrliczError::InverseOverflow { s });
                }
                lo = hi;
                step = (step * step).min(MAX_STEP);
            }
        }
        while hi > 2.0 * lo && lo > 0.0 {
            let mid = lo * (hi / lo).sqrt();
            if self.eval(mid) > s {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        for _ in 0..cfg.max_bisect_iters {
            if hi - lo <= cfg.rel_tol * hi {
                return Ok(0.5 * (lo + hi));
            }
            let mid = 0.5 * (lo + hi);
            if self.eval(mid) > s {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Err(OrliczError::NonConvergence {
            iterations: cfg.max_bisect_iters,
            lo,
            hi,
        })
    }
}

fn eval_pwl(points: &[[f64; 2]], t: f64) -> f64 {
    let n = points.len();
    // First breakpoint strictly to the right of t, clamped to the last segment.
    let j = points.partition_point(|&[ti, _]| ti <= t).clamp(1, n - 1);
    let [t0, y0] = points[j - 1];
    let [t1, y1] = points[j];
    y0 + (y1 - y0) / (t1 - t0) * (t - t0)
}

pub(crate) fn check_nonneg(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(OrliczError::InvalidArgument { name, value })
    }
}

/// `Φ₁⁻¹(t) · Φ₂⁻¹(t)`.
pub fn inverse_product(
    phi1: &YoungFunction,
    phi2: &YoungFunction,
    t: f64,
    cfg: &ToleranceConfig,
) -> Result<f64> {
    Ok(phi1.generalized_inverse(t, cfg)? * phi2.generalized_inverse(t, cfg)?)
}

/// Which Young axiom a validation entry samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum YoungAxiom {
    ZeroAtOrigin,
    Nondecreasing,
    MidpointConvex,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub axiom: YoungAxiom,
    pub passed: bool,
    /// Arguments exhibiting the failure: `[t]` or `[s, t]`.
    pub witness: Option<Vec<f64>>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, axiom: YoungAxiom) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

/// Samples the Young axioms on the configured grid. Failures are report
/// entries, never errors.
pub fn validate_young(phi: &YoungFunction, cfg: &ToleranceConfig) -> ValidationReport {
    let slack = |v: f64| cfg.abs_tol + 1e-12 * v.abs();
    let mut grid = vec![0.0];
    grid.extend(cfg.grid());
    let values: Vec<Evaluation> = grid.iter().map(|&t| phi.eval_flagged(t)).collect();

    let phi0 = phi.eval(0.0);
    let zero = AxiomCheck {
        axiom: YoungAxiom::ZeroAtOrigin,
        passed: phi0.abs() <= cfg.abs_tol,
        witness: (phi0.abs() > cfg.abs_tol).then(|| vec![0.0]),
        detail: format!("Φ(0) = {phi0}"),
    };

    let mut monotone = AxiomCheck {
        axiom: YoungAxiom::Nondecreasing,
        passed: true,
        witness: None,
        detail: format!("{} consecutive grid pairs", grid.len() - 1),
    };
    for i in 0..grid.len() - 1 {
        let (a, b) = (values[i], values[i + 1]);
        if a.saturated && b.saturated {
            continue;
        }
        if b.value < a.value - slack(a.value) {
            monotone.passed = false;
            monotone.witness = Some(vec![grid[i], grid[i + 1]]);
            monotone.detail = format!(
                "Φ({}) = {} > Φ({}) = {}",
                grid[i], a.value, grid[i + 1], b.value
            );
            break;
        }
    }

    let mut convex = AxiomCheck {
        axiom: YoungAxiom::MidpointConvex,
        passed: true,
        witness: None,
        detail: String::new(),
    };
    let mut pairs = 0usize;
    'outer: for stride in [1usize, 2, 8, 64, 512] {
        for i in 0..grid.len().saturating_sub(stride) {
            let j = i + stride;
            let (a, b) = (values[i], values[j]);
            if a.saturated || b.saturated {
                continue;
            }
            pairs += 1;
            let mid = phi.eval_flagged(0.5 * (grid[i] + grid[j]));
            let chord = 0.5 * (a.value + b.value);
            if mid.value > chord + slack(chord) {
                convex.passed = false;
                convex.witness = Some(vec![grid[i], grid[j]]);
                convex.detail = format!(
                    "Φ(({s}+{t})/2) = {} > (Φ({s})+Φ({t}))/2 = {chord}",
                    mid.value,
                    s = grid[i],
                    t = grid[j]
                );
                break 'outer;
            }
        }
    }
    if convex.passed {
        convex.detail = format!("{pairs} sampled pairs");
    }

    let mut probe = cfg.grid_range.1;
    let mut last = phi.eval(probe);
    while last <= UNBOUNDED_THRESHOLD && probe < SATURATION {
        probe *= 1e4;
        last = phi.eval(probe);
    }
    let unbounded = AxiomCheck {
        axiom: YoungAxiom::Unbounded,
        passed: last > UNBOUNDED_THRESHOLD,
        witness: (last <= UNBOUNDED_THRESHOLD).then(|| vec![probe.min(SATURATION)]),
        detail: format!("Φ({probe:e}) = {last:e}, threshold {UNBOUNDED_THRESHOLD:e}"),
    };
    ValidationReport {
        checks: vec![zero, monotone, convex, unbounded],
    }
}
