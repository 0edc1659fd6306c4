//! Sparse multivariate polynomials with an N^r multigrading, graded reverse
//! lexicographic term orders with configurable variable precedence,
//! substitution, reduction mod p, and an exact round-tripping text format.

mod monomial;
mod order;
mod polynomial;
mod table;
mod text;

pub use monomial::Monomial;
pub use order::TermOrder;
pub use polynomial::{graded_monomial_basis, PolyError, Polynomial};
pub use table::{VarInfo, VarTable};
pub use text::{format_monomial, format_polynomial, parse_polynomial};
