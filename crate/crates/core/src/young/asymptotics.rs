//! Leading-order behaviour of Young functions at the origin and at infinity,
//! read off the expression tree.

use std::cmp::Ordering;

use serde::Serialize;

use super::YoungFunction;

const EXPONENT_EPS: f64 = 1e-12;

/// Leading term of a Young function near one end of `(0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Growth {
    /// Identically zero on a neighbourhood of the origin.
    Vanishing,
    /// `coef · t^exponent · (ln t)^log_power`.
    Power {
        exponent: f64,
        log_power: f64,
        coef: f64,
    },
    /// `coef · e^(rate·t)`.
    Exponential { rate: f64, coef: f64 },
}

impl Growth {
    fn power(exponent: f64, coef: f64) -> Self {
        Growth::Power {
            exponent,
            log_power: 0.0,
            coef,
        }
    }

    fn scale_value(self, c: f64) -> Self {
        match self {
            Growth::Vanishing => Growth::Vanishing,
            Growth::Power {
                exponent,
                log_power,
                coef,
            } => Growth::Power {
                exponent,
                log_power,
                coef: coef * c,
            },
            Growth::Exponential { rate, coef } => Growth::Exponential {
                rate,
                coef: coef * c,
            },
        }
    }

    fn scale_argument(self, k: f64) -> Self {
        match self {
            Growth::Vanishing => Growth::Vanishing,
            Growth::Power {
                exponent,
                log_power,
                coef,
            } => Growth::Power {
                exponent,
                log_power,
                coef: coef * k.powf(exponent),
            },
            Growth::Exponential { rate, coef } => Growth::Exponential {
                rate: rate * k,
                coef,
            },
        }
    }

    fn coef(&self) -> f64 {
        match self {
            Growth::Vanishing => 0.0,
            Growth::Power { coef, .. } | Growth::Exponential { coef, .. } => *coef,
        }
    }

    fn with_coef(self, c: f64) -> Self {
        match self {
            Growth::Vanishing => Growth::Vanishing,
            Growth::Power {
                exponent,
                log_power,
                ..
            } => Growth::Power {
                exponent,
                log_power,
                coef: c,
            },
            Growth::Exponential { rate, .. } => Growth::Exponential { rate, coef: c },
        }
    }
}

/// Relative size of two functions at one end of `(0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// The first function is eventually strictly smaller.
    Below,
    /// Leading terms coincide; lower-order terms decide.
    Tie,
    /// The first function is eventually strictly larger.
    Above,
}

fn cmp_f64(a: f64, b: f64) -> Ordering {
    let scale = a.abs().max(b.abs()).max(1.0);
    if (a - b).abs() <= EXPONENT_EPS * scale {
        Ordering::Equal
    } else if a < b {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

fn to_comparison(o: Ordering) -> Comparison {
    match o {
        Ordering::Less => Comparison::Below,
        Ordering::Equal => Comparison::Tie,
        Ordering::Greater => Comparison::Above,
    }
}

/// Compares growth orders at infinity, ignoring coefficients.
pub fn order_at_infinity(a: &Growth, b: &Growth) -> Ordering {
    use Growth::*;
    match (a, b) {
        (Vanishing, Vanishing) => Ordering::Equal,
        (Vanishing, _) => Ordering::Less,
        (_, Vanishing) => Ordering::Greater,
        (Power { .. }, Exponential { .. }) => Ordering::Less,
        (Exponential { .. }, Power { .. }) => Ordering::Greater,
        (
            Power {
                exponent: e1,
                log_power: l1,
                ..
            },
            Power {
                exponent: e2,
                log_power: l2,
                ..
            },
        ) => cmp_f64(*e1, *e2).then(cmp_f64(*l1, *l2)),
        (Exponential { rate: r1, .. }, Exponential { rate: r2, .. }) => cmp_f64(*r1, *r2),
    }
}

/// Compares orders of magnitude near the origin, ignoring coefficients.
/// `Greater` means `a` is the larger function for small `t`.
pub fn order_at_zero(a: &Growth, b: &Growth) -> Ordering {
    use Growth::*;
    match (a, b) {
        (Vanishing, Vanishing) => Ordering::Equal,
        (Vanishing, _) => Ordering::Less,
        (_, Vanishing) => Ordering::Greater,
        // Near zero a smaller exponent means a larger function.
        (Power { exponent: e1, .. }, Power { exponent: e2, .. }) => cmp_f64(*e2, *e1),
        // Exponential leading terms do not arise at the origin.
        _ => Ordering::Equal,
    }
}

fn with_coefs(order: Ordering, a: &Growth, b: &Growth) -> Comparison {
    match order {
        Ordering::Equal => to_comparison(cmp_f64(a.coef(), b.coef())),
        o => to_comparison(o),
    }
}

pub fn compare_at_infinity(a: &Growth, b: &Growth) -> Comparison {
    with_coefs(order_at_infinity(a, b), a, b)
}

pub fn compare_at_zero(a: &Growth, b: &Growth) -> Comparison {
    if matches!((a, b), (Growth::Vanishing, Growth::Vanishing)) {
        return Comparison::Tie;
    }
    with_coefs(order_at_zero(a, b), a, b)
}

fn combine(
    terms: &[YoungFunction],
    leading: fn(&YoungFunction) -> Option<Growth>,
    order: fn(&Growth, &Growth) -> Ordering,
    merge: fn(f64, f64) -> f64,
) -> Option<Growth> {
    let mut acc: Option<Growth> = None;
    for term in terms {
        let g = leading(term)?;
        acc = Some(match acc {
            None => g,
            Some(a) => match order(&a, &g) {
                Ordering::Greater => a,
                Ordering::Less => g,
                Ordering::Equal => a.with_coef(merge(a.coef(), g.coef())),
            },
        });
    }
    acc
}

/// Leading behaviour as `t → 0+`. `None` if the tree is degenerate.
pub fn near_zero(phi: &YoungFunction) -> Option<Growth> {
    use YoungFunction::*;
    match phi {
        Power { p } => Some(Growth::power(*p, 1.0)),
        ExpMinusOne => Some(Growth::power(1.0, 1.0)),
        PowerLog { p, q } => Some(Growth::power(p + q, 1.0)),
        Pwl { points } => {
            let [t1, y1] = *points.get(1)?;
            if y1 == 0.0 {
                Some(Growth::Vanishing)
            } else if y1 > 0.0 {
                Some(Growth::power(1.0, y1 / t1))
            } else {
                None
            }
        }
        ArgScale { k, inner } => near_zero(inner).map(|g| g.scale_argument(*k)),
        ValScale { c, inner } => near_zero(inner).map(|g| g.scale_value(*c)),
        Sum { terms } => combine(terms, near_zero, order_at_zero, |a, b| a + b),
        Max { terms } => combine(terms, near_zero, order_at_zero, f64::max),
    }
}

/// Leading behaviour as `t → ∞`. `None` if the tree is bounded or degenerate.
pub fn near_infinity(phi: &YoungFunction) -> Option<Growth> {
    use YoungFunction::*;
    match phi {
        Power { p } => Some(Growth::power(*p, 1.0)),
        ExpMinusOne => Some(Growth::Exponential {
            rate: 1.0,
            coef: 1.0,
        }),
        PowerLog { p, q } => Some(Growth::Power {
            exponent: *p,
            log_power: *q,
            coef: 1.0,
        }),
        Pwl { points } => {
            let n = points.len();
            let [t0, y0] = points[n - 2];
            let [t1, y1] = points[n - 1];
            let slope = (y1 - y0) / (t1 - t0);
            (slope > 0.0).then(|| Growth::power(1.0, slope))
        }
        ArgScale { k, inner } => near_infinity(inner).map(|g| g.scale_argument(*k)),
        ValScale { c, inner } => near_infinity(inner).map(|g| g.scale_value(*c)),
        Sum { terms } => combine(terms, near_infinity, order_at_infinity, |a, b| a + b),
        Max { terms } => combine(terms, near_infinity, order_at_infinity, f64::max),
    }
}
