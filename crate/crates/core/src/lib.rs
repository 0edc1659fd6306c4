//! Exact-arithmetic toolkit for invariants of the cyclic group of prime
//! order in characteristic p, organized around the reduction to classical
//! binary-form covariants.
//!
//! The crate is `no_std` (with `alloc`); everything is computed exactly
//! over the rationals or a prime field, never with floating point.
//!
//! Module map:
//! - [`exactalg`][]: scalars (arbitrary-precision rationals, residues mod p)
//!   and dense exact linear algebra (rank, kernel, solve, lattice tools).
//! - [`poly`][]: sparse multivariate polynomials with an N^r multigrading,
//!   graded reverse lexicographic term orders, substitution, reduction mod p,
//!   and an exact text format.
//! - [`cpmodules`][]: truncated-polynomial models of the indecomposable
//!   Jordan-block modules, the Delta operator, lengths, tensor decomposition
//!   by rank counting, and the explicit witness chains.
//! - [`reprring`][]: the three representation rings and their Clebsch-Gordan
//!   style products, Chebyshev expansions and the specialization map.
//! - [`invariants`][]: group actions on polynomial rings, transfer and norm,
//!   invariant bases per multidegree, periodicity checks, the
//!   integral-plus-transfer spanning check and a degree-bounded generation
//!   verifier.
//! - [`covariants`][]: binary forms with binomially scaled coefficient bases,
//!   transvectants, the source map, generator catalogs, and polarization.

#![no_std]
#![forbid(unsafe_code)]
// Matrix and exponent code walks several containers with one shared index.
#![allow(clippy::needless_range_loop)]

extern crate alloc;

#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod cpmodules;
pub mod covariants;
pub mod exactalg;
pub mod invariants;
pub mod poly;
pub mod reprring;

pub use exactalg::{Matrix, Scalar};
pub use poly::{Monomial, Polynomial, TermOrder, VarTable};
