//! Concrete measurable functions on ℝⁿ, represented through their
//! distribution functions, and Euclidean balls.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{OrliczError, Result};

/// Volume of the unit ball in ℝⁿ, `π^{n/2} / Γ(n/2 + 1)`, via the
/// recurrence `v_n = (2π / n) v_{n-2}` with `v_0 = 1`, `v_1 = 2`.
pub fn unit_ball_volume(dim: usize) -> f64 {
    let mut v = if dim.is_multiple_of(2) { 1.0 } else { 2.0 };
    let mut k = if dim.is_multiple_of(2) { 2 } else { 3 };
    while k <= dim {
        v *= 2.0 * PI / k as f64;
        k += 2;
    }
    v
}

/// Euclidean ball `B(center, radius)`. The center is carried as metadata;
/// every quantity computed here depends on the volume only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BallRepr", into = "BallRepr")]
pub struct Ball {
    center: Vec<f64>,
    radius: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum BallRepr {
    Ball { center: Vec<f64>, radius: f64 },
}

impl TryFrom<BallRepr> for Ball {
    type Error = OrliczError;
    fn try_from(r: BallRepr) -> Result<Self> {
        let BallRepr::Ball { center, radius } = r;
        Ball::new(center, radius)
    }
}

impl From<Ball> for BallRepr {
    fn from(b: Ball) -> Self {
        BallRepr::Ball {
            center: b.center,
            radius: b.radius,
        }
    }
}

impl Ball {
    pub fn new(center: Vec<f64>, radius: f64) -> Result<Self> {
        let malformed = |path: &str, reason: &str| OrliczError::MalformedFunction {
            path: path.into(),
            reason: reason.into(),
        };
        if center.is_empty() {
            return Err(malformed("center", "ball needs dimension at least 1"));
        }
        if center.iter().any(|x| !x.is_finite()) {
            return Err(malformed("center", "non-finite coordinate"));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(malformed("radius", "radius must be positive and finite"));
        }
        Ok(Ball { center, radius })
    }

    /// Ball of the given radius centered at the origin of ℝ^dim.
    pub fn centered(dim: usize, radius: f64) -> Result<Self> {
        Ball::new(vec![0.0; dim], radius)
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn volume(&self) -> f64 {
        unit_ball_volume(self.dim()) * self.radius.powi(self.dim() as i32)
    }
}

pub fn ball_volume(b: &Ball) -> f64 {
    b.volume()
}

/// An abstract measurable set, known only by its measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub id: usize,
    pub measure: f64,
}

/// Disjoint cells with finite positive measures.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    cells: Vec<Cell>,
}

impl Partition {
    pub fn new(cells: Vec<Cell>) -> Result<Self> {
        for (i, cell) in cells.iter().enumerate() {
            if !(cell.measure.is_finite() && cell.measure > 0.0) {
                return Err(OrliczError::MalformedFunction {
                    path: format!("cells[{i}].measure"),
                    reason: format!("measure must be positive and finite, got {}", cell.measure),
                });
            }
            if cells[..i].iter().any(|c| c.id == cell.id) {
                return Err(OrliczError::MalformedFunction {
                    path: format!("cells[{i}].id"),
                    reason: format!("duplicate cell id {}", cell.id),
                });
            }
        }
        Ok(Partition { cells })
    }

    /// Cells numbered `0..measures.len()`.
    pub fn from_measures(measures: &[f64]) -> Result<Self> {
        Partition::new(
            measures
                .iter()
                .enumerate()
                .map(|(id, &measure)| Cell { id, measure })
                .collect(),
        )
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn total_measure(&self) -> f64 {
        self.cells.iter().map(|c| c.measure).sum()
    }
}

/// Nonnegative step function `Σ c_i χ_{E_i}` over a shared partition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SimpleRepr", into = "SimpleRepr")]
pub struct SimpleFunction {
    partition: Arc<Partition>,
    values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct SimpleCellRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    id: Option<usize>,
    measure: f64,
    value: f64,
}

#[derive(Serialize, Deserialize)]
struct SimpleRepr {
    cells: Vec<SimpleCellRepr>,
}

impl TryFrom<SimpleRepr> for SimpleFunction {
    type Error = OrliczError;
    fn try_from(r: SimpleRepr) -> Result<Self> {
        let cells = r
            .cells
            .iter()
            .enumerate()
            .map(|(i, c)| Cell {
                id: c.id.unwrap_or(i),
                measure: c.measure,
            })
            .collect();
        let values = r.cells.iter().map(|c| c.value).collect();
        SimpleFunction::new(Arc::new(Partition::new(cells)?), values)
    }
}

impl From<SimpleFunction> for SimpleRepr {
    fn from(f: SimpleFunction) -> Self {
        SimpleRepr {
            cells: f
                .partition
                .cells()
                .iter()
                .zip(&f.values)
                .map(|(c, &value)| SimpleCellRepr {
                    id: Some(c.id),
                    measure: c.measure,
                    value,
                })
                .collect(),
        }
    }
}

impl SimpleFunction {
    pub fn new(partition: Arc<Partition>, values: Vec<f64>) -> Result<Self> {
        if values.len() != partition.len() {
            return Err(OrliczError::MalformedFunction {
                path: "values".into(),
                reason: format!(
                    "{} values for {} cells",
                    values.len(),
                    partition.len()
                ),
            });
        }
        if let Some(i) = values.iter().position(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(OrliczError::MalformedFunction {
                path: format!("cells[{i}].value"),
                reason: format!("value must be finite and nonnegative, got {}", values[i]),
            });
        }
        Ok(SimpleFunction { partition, values })
    }

    /// Builds a function on its own fresh partition from `(measure, value)` pairs.
    pub fn from_cells(cells: &[(f64, f64)]) -> Result<Self> {
        let measures: Vec<f64> = cells.iter().map(|c| c.0).collect();
        let values = cells.iter().map(|c| c.1).collect();
        SimpleFunction::new(Arc::new(Partition::from_measures(&measures)?), values)
    }

    /// The zero function on an empty partition.
    pub fn zero() -> Self {
        SimpleFunction {
            partition: Arc::new(Partition { cells: Vec::new() }),
            values: Vec::new(),
        }
    }

    pub fn partition(&self) -> &Arc<Partition> {
        &self.partition
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `(measure, value)` for each cell.
    pub fn cells(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.partition
            .cells()
            .iter()
            .zip(&self.values)
            .map(|(c, &v)| (c.measure, v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// Measure of `{x : f(x) > 0}`.
    pub fn support_measure(&self) -> f64 {
        self.cells().filter(|&(_, v)| v > 0.0).map(|(m, _)| m).sum()
    }

    pub fn distribution(&self, lambda: f64) -> f64 {
        self.cells().filter(|&(_, v)| v > lambda).map(|(m, _)| m).sum()
    }

    pub fn ess_sup(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Distinct positive levels in increasing order, each paired with the
    /// measure of `{f ≥ level}`.
    pub fn level_tails(&self) -> Vec<(f64, f64)> {
        let mut cells: Vec<(f64, f64)> = self.cells().filter(|&(_, v)| v > 0.0).collect();
        cells.sort_by(|a, b| b.1.total_cmp(&a.1));
        let mut out: Vec<(f64, f64)> = Vec::new();
        let mut tail = 0.0;
        for (m, v) in cells {
            tail += m;
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 = tail,
                _ => out.push((v, tail)),
            }
        }
        out.reverse();
        out
    }

    pub fn scale(&self, k: f64) -> Result<Self> {
        check_positive("k", k)?;
        Ok(SimpleFunction {
            partition: Arc::clone(&self.partition),
            values: self.values.iter().map(|v| v * k).collect(),
        })
    }

    /// Cellwise product on the shared partition.
    pub fn pointwise_product(&self, other: &SimpleFunction) -> Result<Self> {
        if !(Arc::ptr_eq(&self.partition, &other.partition) || self.partition == other.partition)
        {
            return Err(OrliczError::PartitionMismatch);
        }
        Ok(SimpleFunction {
            partition: Arc::clone(&self.partition),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }
}

/// `χ_B` as a single-cell simple function.
pub fn char_function(b: &Ball) -> SimpleFunction {
    SimpleFunction {
        partition: Arc::new(Partition {
            cells: vec![Cell {
                id: 0,
                measure: b.volume(),
            }],
        }),
        values: vec![1.0],
    }
}

pub fn pointwise_product(f: &SimpleFunction, g: &SimpleFunction) -> Result<SimpleFunction> {
    f.pointwise_product(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Support {
    Global,
    Annulus { r_in: f64, r_out: f64 },
}

/// `c |x|^{-α}` on its support in ℝⁿ, zero elsewhere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RadialRepr", into = "RadialRepr")]
pub struct RadialPowerFunction {
    c: f64,
    alpha: f64,
    dim: usize,
    support: Support,
}

#[derive(Clone, Copy, Serialize, Deserialize)]
struct RadialRepr {
    c: f64,
    alpha: f64,
    dim: usize,
    #[serde(default = "global")]
    support: Support,
}

fn global() -> Support {
    Support::Global
}

impl TryFrom<RadialRepr> for RadialPowerFunction {
    type Error = OrliczError;
    fn try_from(r: RadialRepr) -> Result<Self> {
        RadialPowerFunction::new(r.c, r.alpha, r.dim, r.support)
    }
}

impl From<RadialPowerFunction> for RadialRepr {
    fn from(f: RadialPowerFunction) -> Self {
        RadialRepr {
            c: f.c,
            alpha: f.alpha,
            dim: f.dim,
            support: f.support,
        }
    }
}

impl RadialPowerFunction {
    pub fn new(c: f64, alpha: f64, dim: usize, support: Support) -> Result<Self> {
        let malformed = |path: &str, reason: String| OrliczError::MalformedFunction {
            path: path.into(),
            reason,
        };
        if !(c.is_finite() && c > 0.0) {
            return Err(malformed("c", format!("coefficient must be positive, got {c}")));
        }
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(malformed("alpha", format!("exponent must be positive, got {alpha}")));
        }
        if dim == 0 {
            return Err(malformed("dim", "dimension must be at least 1".into()));
        }
        if let Support::Annulus { r_in, r_out } = support {
            if !(r_in.is_finite() && r_in >= 0.0 && r_out.is_finite() && r_out > r_in) {
                return Err(malformed(
                    "support.annulus",
                    format!("need 0 <= r_in < r_out < inf, got ({r_in}, {r_out})"),
                ));
            }
        }
        Ok(RadialPowerFunction {
            c,
            alpha,
            dim,
            support,
        })
    }

    pub fn global(c: f64, alpha: f64, dim: usize) -> Result<Self> {
        RadialPowerFunction::new(c, alpha, dim, Support::Global)
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn support(&self) -> Support {
        self.support
    }

    /// `n / α`: the distribution function decays like `λ^{-n/α}`.
    pub fn decay_exponent(&self) -> f64 {
        self.dim as f64 / self.alpha
    }

    /// Measure of `{|x| < ρ}` intersected with the support.
    fn ball_part(&self, rho: f64) -> f64 {
        let vn = unit_ball_volume(self.dim);
        let n = self.dim as i32;
        match self.support {
            Support::Global => vn * rho.powi(n),
            Support::Annulus { r_in, r_out } => {
                let r = rho.clamp(r_in, r_out);
                vn * (r.powi(n) - r_in.powi(n))
            }
        }
    }

    /// Exact `|{x : f(x) > λ}|`; infinite at `λ = 0` for global support.
    pub fn distribution(&self, lambda: f64) -> f64 {
        if lambda <= 0.0 {
            return match self.support {
                Support::Global => f64::INFINITY,
                Support::Annulus { r_out, .. } => self.ball_part(r_out),
            };
        }
        // f(x) > λ  ⟺  |x| < (c/λ)^{1/α}
        self.ball_part((self.c / lambda).powf(1.0 / self.alpha))
    }

    pub fn ess_sup(&self) -> f64 {
        match self.support {
            Support::Annulus { r_in, .. } if r_in > 0.0 => self.c * r_in.powf(-self.alpha),
            _ => f64::INFINITY,
        }
    }

    pub fn scale(&self, k: f64) -> Result<Self> {
        check_positive("k", k)?;
        Ok(RadialPowerFunction { c: self.c * k, ..*self })
    }
}

/// A function in one of the supported concrete representations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Function {
    Simple(SimpleFunction),
    RadialPower(RadialPowerFunction),
}

impl From<SimpleFunction> for Function {
    fn from(f: SimpleFunction) -> Self {
        Function::Simple(f)
    }
}

impl From<RadialPowerFunction> for Function {
    fn from(f: RadialPowerFunction) -> Self {
        Function::RadialPower(f)
    }
}

/// Anything with a computable distribution function `λ ↦ |{|f| > λ}|`.
pub trait Distribution {
    fn distribution(&self, lambda: f64) -> f64;
    /// Essential supremum, possibly infinite.
    fn ess_sup(&self) -> f64;
    /// Levels at which the distribution function jumps.
    fn jumps(&self) -> Vec<f64> {
        Vec::new()
    }
}

impl Distribution for SimpleFunction {
    fn distribution(&self, lambda: f64) -> f64 {
        SimpleFunction::distribution(self, lambda)
    }
    fn ess_sup(&self) -> f64 {
        SimpleFunction::ess_sup(self)
    }
    fn jumps(&self) -> Vec<f64> {
        self.level_tails().into_iter().map(|(v, _)| v).collect()
    }
}

impl Distribution for RadialPowerFunction {
    fn distribution(&self, lambda: f64) -> f64 {
        RadialPowerFunction::distribution(self, lambda)
    }
    fn ess_sup(&self) -> f64 {
        RadialPowerFunction::ess_sup(self)
    }
}

impl Distribution for Function {
    fn distribution(&self, lambda: f64) -> f64 {
        match self {
            Function::Simple(f) => f.distribution(lambda),
            Function::RadialPower(f) => f.distribution(lambda),
        }
    }
    fn ess_sup(&self) -> f64 {
        match self {
            Function::Simple(f) => f.ess_sup(),
            Function::RadialPower(f) => f.ess_sup(),
        }
    }
    fn jumps(&self) -> Vec<f64> {
        match self {
            Function::Simple(f) => Distribution::jumps(f),
            Function::RadialPower(f) => Distribution::jumps(f),
        }
    }
}

impl Function {
    /// `true` when `f = 0` almost everywhere.
    pub fn is_zero(&self) -> bool {
        match self {
            Function::Simple(f) => f.is_zero(),
            Function::RadialPower(_) => false,
        }
    }

    pub fn scale(&self, k: f64) -> Result<Self> {
        Ok(match self {
            Function::Simple(f) => Function::Simple(f.scale(k)?),
            Function::RadialPower(f) => Function::RadialPower(f.scale(k)?),
        })
    }
}

/// `|{x : f(x) > λ}|` for any supported function.
pub fn distribution(f: &Function, lambda: f64) -> Result<f64> {
    crate::young::check_nonneg("lambda", lambda)?;
    Ok(f.distribution(lambda))
}

pub fn scale(f: &Function, k: f64) -> Result<Function> {
    f.scale(k)
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(OrliczError::InvalidArgument { name, value })
    }
}
