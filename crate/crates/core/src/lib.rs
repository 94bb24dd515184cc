//! Membership tests, Schwarz-lemma interpolants and dimension-shift maps for
//! the symmetrized polydisc `G_n` and its extension `G~_n`.
//!
//! Points are written `(y_1, ..., y_{n-1}, q)`; coordinate indices are
//! 1-based in all documentation and public accessors.

// Negated comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod domains;
pub mod error;
pub mod geometry;
pub mod schwarz;
pub mod tolerance;
pub mod verify;

mod json;

pub use algebra::{binom, c, defect, mobius, op_norm, parrott_central, roots, Cplx, Mat2, MonicPoly};
pub use domains::{
    beta_solve, char2_oracle, char3, char5_construct, in_gammatilde, in_gn, in_gtilde, in_jn, in_kn, phi, phi_hinf,
    symmetrize, BetaDecomposition, ContractionTuple, DomainPoint, MembershipVerdict, Verdict,
};
pub use error::{Error, Result};
pub use geometry::{shift, shift_verify, ShiftMap, ShiftMapId};
pub use schwarz::{
    build_schur, interpolant_derivative, interpolant_eval, interpolate_full, lift_even, lift_odd, necessary_condition,
    r_coeff, schur_eval, two_point_norm_check, DerivativeData, InterpolantSpec, Interpolation, LiftInput, SchurFamily,
};
pub use tolerance::Tolerances;
pub use verify::{
    run_suite, sample, sample_inside_gn, sample_inside_gtilde, SampleConfig, SampleMode, VerificationReport,
};
