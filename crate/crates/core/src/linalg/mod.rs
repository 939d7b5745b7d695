//! Exact rational linear algebra.

pub mod dense;
pub mod rational;
pub mod sparse;

pub use dense::{kernel, rank, rref, solve_linear_system, sym_signature, QMatrix, Rref, Signature, Solution, Subspace};
pub use rational::{q, Rational};
pub use sparse::{combine, intersect, kernel_of_images, CoordinateBasis, Echelon, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch")]
    DimensionMismatch,
}
