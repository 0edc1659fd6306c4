//! Exact scalar arithmetic and dense linear algebra over Q and F_p.
//!
//! Everything here is exact: rationals are arbitrary precision and kept in
//! lowest terms, residues mod p live in `[0, p)` for a validated prime p.
//! Mixing characteristics is a bug and is rejected at the public boundaries.

mod matrix;
mod scalar;

pub use matrix::{lattice_saturate, p_saturate, LinAlgError, Matrix};
pub use scalar::{is_prime, Scalar, ScalarError};
