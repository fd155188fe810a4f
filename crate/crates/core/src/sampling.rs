//! Seeded random families of simple functions and Young functions.
//!
//! Every generator draws from a `ChaCha8Rng` seeded with the spec's seed, so
//! a given `(spec, seed)` always yields bit-identical samples.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{OrliczError, Result};
use crate::funcspace::{Ball, Partition, SimpleFunction};
use crate::young::YoungFunction;

/// Description of a seeded family of simple functions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SampleSpec {
    pub seed: u64,
    /// Number of random functions; indicators come on top.
    pub count: usize,
    pub max_cells: usize,
    /// Cell measures are log-uniform on this range.
    pub measure_range: (f64, f64),
    /// Cell values are log-uniform on this range.
    pub value_range: (f64, f64),
    /// Append indicators of sets of measure `10^k`, `k = -4..=4`.
    pub include_indicators: bool,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec {
            seed: 42,
            count: 100,
            max_cells: 16,
            measure_range: (1e-4, 1e4),
            value_range: (1e-4, 1e4),
            include_indicators: true,
        }
    }
}

impl SampleSpec {
    pub fn with_seed(seed: u64, count: usize) -> Self {
        SampleSpec {
            seed,
            count,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let range_ok = |(lo, hi): (f64, f64)| lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi;
        if self.max_cells == 0 {
            return Err(OrliczError::InvalidConfig("max_cells must be positive".into()));
        }
        if !range_ok(self.measure_range) || !range_ok(self.value_range) {
            return Err(OrliczError::InvalidConfig(
                "sample ranges must satisfy 0 < lo ≤ hi < ∞".into(),
            ));
        }
        Ok(())
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Log-uniform draw from `[lo, hi]`.
pub fn log_uniform<R: Rng>(rng: &mut R, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        return lo;
    }
    rng.gen_range(lo.ln()..=hi.ln()).exp()
}

fn random_partition<R: Rng>(rng: &mut R, spec: &SampleSpec) -> Arc<Partition> {
    let cells = rng.gen_range(1..=spec.max_cells);
    let measures: Vec<f64> = (0..cells).map(|_| log_uniform(rng, spec.measure_range)).collect();
    Arc::new(Partition::from_measures(&measures).expect("sampled measures are positive"))
}

fn random_values<R: Rng>(rng: &mut R, spec: &SampleSpec, n: usize) -> Vec<f64> {
    (0..n).map(|_| log_uniform(rng, spec.value_range)).collect()
}

fn indicators() -> impl Iterator<Item = SimpleFunction> {
    (-4..=4).map(|k| SimpleFunction::from_cells(&[(10f64.powi(k), 1.0)]).expect("valid indicator"))
}

/// The family described by `spec`.
pub fn sample_functions(spec: &SampleSpec) -> Result<Vec<SimpleFunction>> {
    spec.validate()?;
    let mut rng = spec.rng();
    let mut out = Vec::with_capacity(spec.count + 9);
    for _ in 0..spec.count {
        let partition = random_partition(&mut rng, spec);
        let values = random_values(&mut rng, spec, partition.len());
        out.push(SimpleFunction::new(partition, values)?);
    }
    if spec.include_indicators {
        out.extend(indicators());
    }
    Ok(out)
}

/// Pairs of functions sharing one partition, for product bounds.
pub fn sample_pairs(spec: &SampleSpec) -> Result<Vec<(SimpleFunction, SimpleFunction)>> {
    spec.validate()?;
    let mut rng = spec.rng();
    let mut out = Vec::with_capacity(spec.count + 9);
    for _ in 0..spec.count {
        let partition = random_partition(&mut rng, spec);
        let f = random_values(&mut rng, spec, partition.len());
        let g = random_values(&mut rng, spec, partition.len());
        out.push((
            SimpleFunction::new(Arc::clone(&partition), f)?,
            SimpleFunction::new(partition, g)?,
        ));
    }
    if spec.include_indicators {
        out.extend(indicators().map(|f| (f.clone(), f)));
    }
    Ok(out)
}

/// Functions whose partitions fit inside `ball`: sampled measures are
/// rescaled to a total of `u·|ball|` with `u` uniform on `(0, 1]`.
pub fn sample_in_ball(spec: &SampleSpec, ball: &Ball) -> Result<Vec<SimpleFunction>> {
    spec.validate()?;
    let volume = ball.volume();
    let mut rng = spec.rng();
    let mut out = Vec::with_capacity(spec.count + 1);
    for _ in 0..spec.count {
        let cells = rng.gen_range(1..=spec.max_cells);
        let raw: Vec<f64> = (0..cells).map(|_| log_uniform(&mut rng, spec.measure_range)).collect();
        let fill: f64 = 1.0 - rng.gen::<f64>();
        let total: f64 = raw.iter().sum();
        // Rounding in the rescaled sum must not push it past the volume.
        let k = fill * volume / total * (1.0 - 1e-14);
        let measures: Vec<f64> = raw.iter().map(|m| m * k).collect();
        let values = random_values(&mut rng, spec, cells);
        out.push(SimpleFunction::new(
            Arc::new(Partition::from_measures(&measures)?),
            values,
        )?);
    }
    if spec.include_indicators {
        out.push(SimpleFunction::from_cells(&[(volume, 1.0)])?);
    }
    Ok(out)
}

/// A random Young function from the families whose leading terms are
/// recognized: powers, `e^t − 1`, power-logs, and scaled sums and maxima.
pub fn random_young<R: Rng>(rng: &mut R) -> YoungFunction {
    let primitive = |rng: &mut R| match rng.gen_range(0..3) {
        0 => YoungFunction::power(rng.gen_range(1.0..=8.0)),
        1 => YoungFunction::exp_minus_one(),
        _ => YoungFunction::power_log(rng.gen_range(1.0..=4.0), rng.gen_range(0.0..=2.0)),
    };
    let base = match rng.gen_range(0..4) {
        0 | 1 => primitive(rng),
        2 => YoungFunction::sum(vec![primitive(rng), primitive(rng)]),
        _ => YoungFunction::max(vec![primitive(rng), primitive(rng)]),
    };
    let k = log_uniform(rng, (0.25, 4.0));
    let c = log_uniform(rng, (0.25, 4.0));
    base.arg_scale(k).val_scale(c)
}

/// Seeded stream for suite internals.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_given_seed() {
        let spec = SampleSpec::with_seed(7, 20);
        assert_eq!(sample_functions(&spec).unwrap(), sample_functions(&spec).unwrap());
        let other = SampleSpec::with_seed(8, 20);
        assert_ne!(sample_functions(&spec).unwrap(), sample_functions(&other).unwrap());
    }

    #[test]
    fn respects_ranges() {
        let spec = SampleSpec::with_seed(1, 200);
        let fs = sample_functions(&spec).unwrap();
        assert_eq!(fs.len(), 209);
        for f in &fs[..200] {
            assert!((1..=16).contains(&f.partition().len()));
            for (m, v) in f.cells() {
                assert!((1e-4..=1e4).contains(&m) && (1e-4..=1e4).contains(&v));
            }
        }
    }

    #[test]
    fn pairs_share_partitions() {
        for (f, g) in sample_pairs(&SampleSpec::with_seed(3, 30)).unwrap() {
            assert!(f.pointwise_product(&g).is_ok());
        }
    }

    #[test]
    fn ball_samples_fit() {
        let ball = Ball::centered(1, 1.0).unwrap();
        for f in sample_in_ball(&SampleSpec::with_seed(5, 100), &ball).unwrap() {
            assert!(f.partition().total_measure() <= ball.volume());
        }
    }
}
