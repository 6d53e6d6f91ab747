//! Exact arithmetic: rationals, polynomials in λ, and fraction-free linear
//! algebra. Nothing here touches floating point.

pub mod laurent;
pub mod matrix;
pub mod poly;
pub mod poly_matrix;
pub mod rational;

use thiserror::Error;

pub use laurent::{laurent_is_zero, LaurentPoly};
pub use matrix::{kernel_basis, rank_of, RatMatrix};
pub use poly::{poly_gcd, UniPoly};
pub use poly_matrix::{laurent_det, poly_kernel_vector, LaurentMatrix};
pub use rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("shape mismatch: expected {expected} entries, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("kernel is trivial (full column rank)")]
    FullRank,
}
