//! Explicit weight bases for the finite-dimensional irreducible modules of
//! the symplectic Lie algebra `sp(2n)`.
//!
//! Basis vectors are indexed by interlacing patterns ([`patterns`]); the
//! generators `F_kk`, `F_{k,−k}`, `F_{−k,k}` and `F_{k−1,−k}` act by closed
//! formulas ([`action`]); every other `F_ij` is recovered by bracket closure
//! ([`algebra`]). [`branching`] holds the restriction rule to `sp(2n−2)`
//! and the independent dimension and character oracles.

pub mod action;
pub mod algebra;
pub mod branching;
pub mod error;
pub mod io;
pub mod model;
pub mod patterns;

pub use error::{Error, Result};
pub use model::{
    canonical_order, DefiningMatrix, HighestWeight, Pattern, PatternDelta, Rational, Row,
    SignedIndex, SparseOperator, Weight,
};
pub use patterns::{PatternBasis, DEFAULT_GUARD};
