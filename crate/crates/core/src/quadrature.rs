//! Globally adaptive Gauss–Kronrod (7/15) quadrature and an expanding-window
//! integrator for `(0, ∞)` with tail-decay monitoring.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

// Kronrod 15-point abscissae (non-negative half) and weights; every other
// abscissa is a Gauss 7-point node. Digits are kept as published.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).abs();
    (value, err)
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Integrates `f` over `[a, b]`, bisecting the segment with the largest
/// error estimate until the total estimate is within
/// `max(abs_tol, rel_tol · |I|)` or `max_segments` is reached.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
) -> QuadResult {
    if a == b {
        return QuadResult {
            value: 0.0,
            abs_error: 0.0,
            evaluations: 0,
            converged: true,
        };
    }
    let (value, err) = gk15(&mut f, a, b);
    let mut evaluations = 15;
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value, err });
    let mut total = value;
    let mut total_err = err;
    while total_err > abs_tol.max(rel_tol * total.abs()) {
        if heap.len() >= max_segments {
            return QuadResult {
                value: total,
                abs_error: total_err,
                evaluations,
                converged: false,
            };
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Segment cannot be split further in floating point.
            heap.push(worst);
            return QuadResult {
                value: total,
                abs_error: total_err,
                evaluations,
                converged: false,
            };
        }
        let (v1, e1) = gk15(&mut f, worst.a, mid);
        let (v2, e2) = gk15(&mut f, mid, worst.b);
        evaluations += 30;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: v1,
            err: e1,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: v2,
            err: e2,
        });
        // Guard against drift in the running sums.
        if heap.len() % 64 == 0 {
            total = heap.iter().map(|s| s.value).sum();
            total_err = heap.iter().map(|s| s.err).sum();
        }
    }
    total = heap.iter().map(|s| s.value).sum();
    total_err = heap.iter().map(|s| s.err).sum();
    QuadResult {
        value: total,
        abs_error: total_err,
        evaluations,
        converged: true,
    }
}

/// Outcome of integrating over `(0, upper)` with `upper` possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HalfLine {
    Converged(QuadResult),
    /// Window contributions stopped shrinking toward an open end.
    NotDecaying { partial: f64, at: f64 },
    /// The window reached the representable range without settling.
    Exhausted { partial: f64 },
}

const WINDOW: f64 = 4.0;
const MAX_LOG: f64 = 690.0;
const SETTLE_WINDOWS: usize = 3;
const GROWTH_WINDOWS: usize = 6;
/// Window contributions must shrink at least this much to count as decaying.
const DECAY_RATIO: f64 = 0.99;

/// Integrates a nonnegative `g` over `(0, upper)` in the variable
/// `u = ln s`, adding windows of width `WINDOW` outward from `ln pivot`
/// until contributions become negligible. A run of non-shrinking window
/// contributions toward an open end is reported as divergence.
pub fn integrate_half_line<F: FnMut(f64) -> f64>(
    mut g: F,
    pivot: f64,
    upper: f64,
    rel_tol: f64,
) -> HalfLine {
    let mut h = |u: f64| {
        let s = u.exp();
        if s <= 0.0 || !s.is_finite() {
            0.0
        } else {
            g(s) * s
        }
    };
    let u_upper = if upper.is_finite() { upper.ln() } else { f64::INFINITY };
    let u0 = pivot.ln().min(u_upper);
    let mut total = 0.0;
    let mut total_err = 0.0;
    let mut evaluations = 0;
    let window = |h: &mut dyn FnMut(f64) -> f64, a: f64, b: f64| {
        let r = integrate(h, a, b, 1e-300, rel_tol * 0.1, 2000);
        (r.value, r.abs_error, r.evaluations)
    };

    // Upward from the pivot.
    let mut u = u0;
    let mut quiet = 0;
    let mut growing = 0;
    let mut previous = f64::INFINITY;
    while u < u_upper {
        let next = (u + WINDOW).min(u_upper);
        let (v, e, n) = window(&mut h, u, next);
        total += v;
        total_err += e;
        evaluations += n;
        u = next;
        if v <= rel_tol * 1e-3 * total.abs() {
            quiet += 1;
            if quiet >= SETTLE_WINDOWS {
                break;
            }
        } else {
            quiet = 0;
        }
        if v >= DECAY_RATIO * previous && v > 0.0 {
            growing += 1;
            if growing >= GROWTH_WINDOWS {
                return HalfLine::NotDecaying {
                    partial: total,
                    at: u.exp(),
                };
            }
        } else {
            growing = 0;
        }
        previous = v;
        if u >= MAX_LOG {
            return HalfLine::Exhausted { partial: total };
        }
    }

    // Downward toward the origin.
    let mut u = u0;
    let mut quiet = 0;
    let mut growing = 0;
    let mut previous = f64::INFINITY;
    loop {
        let next = u - WINDOW;
        let (v, e, n) = window(&mut h, next, u);
        total += v;
        total_err += e;
        evaluations += n;
        u = next;
        if v <= rel_tol * 1e-3 * total.abs() {
            quiet += 1;
            if quiet >= SETTLE_WINDOWS {
                break;
            }
        } else {
            quiet = 0;
        }
        if v >= DECAY_RATIO * previous && v > 0.0 {
            growing += 1;
            if growing >= GROWTH_WINDOWS {
                return HalfLine::NotDecaying {
                    partial: total,
                    at: u.exp(),
                };
            }
        } else {
            growing = 0;
        }
        previous = v;
        if u <= -MAX_LOG {
            return HalfLine::Exhausted { partial: total };
        }
    }

    HalfLine::Converged(QuadResult {
        value: total,
        abs_error: total_err,
        evaluations,
        converged: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let r = integrate(|x| x * x * x - 2.0 * x, 0.0, 2.0, 1e-14, 1e-14, 100);
        assert!(r.converged);
        assert!((r.value - 0.0).abs() < 1e-13);
        let r = integrate(|x| x.powi(6), -1.0, 1.0, 1e-14, 1e-14, 100);
        assert!((r.value - 2.0 / 7.0).abs() < 1e-14);
    }

    #[test]
    fn step_function_refines_at_jump() {
        let r = integrate(|x| if x < 0.3 { 2.0 } else { 0.5 }, 0.0, 1.0, 1e-12, 1e-10, 5000);
        assert!(r.converged);
        assert!((r.value - (0.6 + 0.35)).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn algebraic_endpoint_singularity() {
        let r = integrate(|x| x.powf(-0.5), 0.0, 1.0, 1e-12, 1e-10, 5000);
        assert!((r.value - 2.0).abs() < 1e-7, "{}", r.value);
    }

    #[test]
    fn half_line_convergent_integrals() {
        // ∫₀^∞ e^{-s} ds = 1
        match integrate_half_line(|s| (-s).exp(), 1.0, f64::INFINITY, 1e-10) {
            HalfLine::Converged(r) => assert!((r.value - 1.0).abs() < 1e-9, "{}", r.value),
            other => panic!("{other:?}"),
        }
        // ∫₀^∞ 1/(√s (1+s)) ds = π
        match integrate_half_line(|s| 1.0 / (s.sqrt() * (1.0 + s)), 1.0, f64::INFINITY, 1e-10) {
            HalfLine::Converged(r) => {
                assert!((r.value - std::f64::consts::PI).abs() < 1e-8, "{}", r.value)
            }
            other => panic!("{other:?}"),
        }
        // Bounded upper limit: ∫₀^4 s^{-1/2} ds = 4
        match integrate_half_line(|s| s.powf(-0.5), 1.0, 4.0, 1e-10) {
            HalfLine::Converged(r) => assert!((r.value - 4.0).abs() < 1e-8, "{}", r.value),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn half_line_detects_divergence() {
        // ∫ 1/s diverges at both ends: window contributions are constant.
        assert!(matches!(
            integrate_half_line(|s| 1.0 / s, 1.0, f64::INFINITY, 1e-10),
            HalfLine::NotDecaying { .. }
        ));
        // ∫ s^{-1/2} diverges at infinity.
        assert!(matches!(
            integrate_half_line(|s| s.powf(-0.5), 1.0, f64::INFINITY, 1e-10),
            HalfLine::NotDecaying { .. }
        ));
    }
}
