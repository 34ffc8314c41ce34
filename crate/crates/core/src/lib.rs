//! Exact arithmetic for pseudoidentity pairs of Laurent polynomial matrices
//! and their factorization into nilpotent primitive factors.
//!
//! Scalars live in `Q` or `Q(i)`; nothing here uses floating point.

pub mod error;
pub mod factor;
pub mod laurent;
pub mod matrix;
pub mod pseudoidentity;
pub mod rational;
pub mod scalar;
pub mod wavelet;

pub use error::{Error, PseudoidentityViolation, Result, WaveletViolation};
pub use laurent::{
    euclid_trace, lp_adjoint, lp_eval_one, lp_ring, poly_divmod, Degree, EuclidTrace, LaurentPoly,
    RingOp,
};
pub use matrix::{
    mat_adjoint, mat_det, mat_eval_one, mat_inverse_unimodular, mat_mul, BlockForm, ConstMatrix,
    LPMatrix,
};
pub use pseudoidentity::{
    check_pseudoidentity, derive_partner, example_pair, family_u, probe_conjecture, random_pair,
    ConjectureProbeReport, PseudoidentityPair,
};
pub use rational::Rational;
pub use scalar::{scalar_arith, scalar_format, scalar_parse, ArithOp, FieldScalar, FieldTag};
