//! Factorization of pseudoidentity left members into nilpotent primitive
//! factors `I - N + N z^-k` with `N^2 = 0`.
//!
//! The general path reduces `C(t)` to a constant diagonal with type-I
//! operations, splits every elementary factor `I + f E_ij` coefficient by
//! coefficient, and sweeps the leftover constants to the right end by
//! conjugation. The rank-2 path replaces the reduction with the Euclidean
//! algorithm on the first column. Factorizations are not unique; both paths
//! are judged by [`verify_factorization`].

mod lattice;
mod primitive;
mod rank2;
mod reduce;
mod verify;

pub use lattice::{lattice_form, LatticeForm, LatticeStage};
pub use primitive::{compose_left, compose_right, Elementary, NilFactorization, PrimitiveFactor};
pub use rank2::{chain_product, euclid_chain, factorize_rank2_euclid, EuclidChain};
pub use reduce::{
    conjugate_sweep, diagonalize_type1, factorize_nilpotent, ops_to_left_factors, split_elementary,
    Diagonalization, ElementaryOpRecord, OpSide, SweepItem,
};
pub use verify::{verify_factorization, verify_factorization_with_partner, FactorizationReport};
