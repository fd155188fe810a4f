//! Orlicz and weak Orlicz norms of concretely represented functions on ℝⁿ,
//! and certified comparison of Young functions.
//!
//! * [`young`]: Young functions, validation, generalized inverses.
//! * [`funcspace`]: balls, simple functions, radial power functions.
//! * [`norms`]: modulars, Luxemburg norms, weak quasi-norms.
//! * [`inclusion`]: domination certificates and inclusion verdicts.
//! * [`suite`]: the invariant suites behind `orlicz verify`.

pub mod config;
pub mod error;
pub mod funcspace;
pub mod inclusion;
pub mod norms;
pub mod quadrature;
pub mod sampling;
pub mod solver;
pub mod suite;
pub mod young;

pub use config::ToleranceConfig;
pub use error::{OrliczError, Result};
pub use funcspace::{Ball, Function, RadialPowerFunction, SimpleFunction, Support};
pub use norms::{luxemburg_norm, modular, weak_norm, weak_sup, Modular, NormResult};
pub use young::{validate_young, YoungFunction};
