use thiserror::Error;

/// Errors raised by the toolkit. Verdicts such as "domination fails" are
/// ordinary values, not errors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OrliczError {
    #[error("argument `{name}` must be a finite nonnegative number, got {value}")]
    InvalidArgument { name: &'static str, value: f64 },

    #[error("malformed Young function at `{path}`: {reason}")]
    MalformedYoung { path: String, reason: String },

    #[error("malformed function at `{path}`: {reason}")]
    MalformedFunction { path: String, reason: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("generalized inverse at s = {s}: Young function stays at or below s over the representable range")]
    InverseOverflow { s: f64 },

    #[error("functions are defined on different partitions")]
    PartitionMismatch,

    #[error("bisection did not converge after {iterations} iterations, bracket [{lo}, {hi}]")]
    NonConvergence { iterations: usize, lo: f64, hi: f64 },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, OrliczError>;
