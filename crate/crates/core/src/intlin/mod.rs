//! Exact integer linear algebra over arbitrary-precision integers: Smith
//! normal form with transforms, kernels, cokernels and image membership.

mod matrix;
mod smith;

use thiserror::Error;

pub use matrix::IntMatrix;
pub use smith::{
    cokernel_invariants, kernel_basis, rank, smith, smith_dense, smith_diagonal, smith_sparse, solve_in_image,
    SmithForm,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntLinError {
    #[error("cannot multiply {left:?} by {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("determinant of a non-square {rows}x{cols} matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
