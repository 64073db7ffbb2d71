//! Closed-form squares, traces and spectra of the eight symmetric
//! non-normalized discrete cosine and sine transforms (types 1, 4, 5, 8),
//! checked against an independent Jacobi eigensolver.

pub mod cli;
pub mod closed_forms;
pub mod dtt;
pub mod eigensolver;
pub mod error;
pub mod exact;
pub mod spectrum;
pub mod subspaces;
pub mod trig_sums;
pub mod verifier;

pub use dtt::{build_matrix, SquareMatrix, TransformKind, Vector};
pub use error::{DttError, Result};
