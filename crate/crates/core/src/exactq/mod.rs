//! Exact linear algebra over ℚ.
//!
//! Matrices are sparse row-major with [`Rational`] entries. Elimination uses
//! normalized fractions; there is no floating point anywhere in the crate.

mod echelon;
mod matrix;
pub mod rational;

pub use echelon::Echelon;
pub use matrix::{axpy, collect_sparse, row_space_equal, RationalMatrix};
pub use rational::{format_rational, parse_rational, Rational};

/// Sparse vector: `(index, value)` pairs sorted by index, no zeros.
pub type SparseVec = Vec<(usize, Rational)>;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ExactqError {
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
}
