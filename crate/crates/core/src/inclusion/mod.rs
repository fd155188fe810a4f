//! Inclusion between Orlicz and weak Orlicz spaces, decided by comparing
//! Young functions and cross-checked on concrete functions.
//!
//! `L_Ψ ⊆ L_Φ` holds exactly when `Φ(t) ≤ Ψ(Ct)` for some `C` and all
//! `t > 0`, and then `‖f‖_Φ ≤ C‖f‖_Ψ`; the same holds for the weak spaces.
//! [`domination`] certifies the pointwise condition, [`empirical`] tests the
//! norm inequalities on sampled functions and ball indicators, and
//! [`verdict`] assembles all five statements.

pub mod domination;
pub mod empirical;
pub mod holder;
pub mod verdict;

pub use domination::{
    dominates, eventually_dominates, find_min_constant, inverse_cross_check, DominationCertificate,
    InverseCrossCheck, MinConstant, Verdict, Witness,
};
pub use empirical::{ball_sweep, empirical_norm_inequality, BallSweep, EmpiricalReport, NormKind};
pub use holder::{bounded_domain_inclusion, holder_triple_check, product_norm_bound, BoundedDomainCheck, HolderCertificate, ProductBound};
pub use verdict::{inclusion_verdict, InclusionConfig, InclusionVerdict, Statement, Status};
