use thiserror::Error;

use crate::dtt::TransformKind;
use crate::eigensolver::EigenResult;

pub type Result<T, E = DttError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum DttError {
    #[error("{kind} requires n >= {min}, got n = {n}")]
    SizeTooSmall {
        kind: TransformKind,
        n: usize,
        min: usize,
    },

    #[error("{what} requires n >= {min}, got n = {n}")]
    ConstructionTooSmall {
        what: &'static str,
        n: usize,
        min: usize,
    },

    #[error("{what} is defined only for {expected} n, got n = {n}")]
    ParityMismatch {
        what: &'static str,
        expected: &'static str,
        n: usize,
    },

    #[error("{kind} has no {what}")]
    UnsupportedKind {
        kind: TransformKind,
        what: &'static str,
    },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("identity {identity} requires {modulus} not dividing {value}")]
    DivisibilityViolation {
        identity: &'static str,
        modulus: i64,
        value: i64,
    },

    #[error("identity {identity} requires a positive structural parameter")]
    ZeroParameter { identity: &'static str },

    #[error("identity {identity} needs its integer parameter")]
    MissingParameter { identity: &'static str },

    #[error("degenerate spectrum for {kind} n = {n}: {reason}")]
    DegenerateSpectrum {
        kind: TransformKind,
        n: usize,
        reason: String,
    },

    #[error("subspace is not invariant: residual {residual:e} exceeds {tolerance:e}")]
    NotInvariant { residual: f64, tolerance: f64 },

    #[error("reduced 2x2 system is defective")]
    DegenerateSystem,

    #[error("matrix is not symmetric: asymmetry {asymmetry:e} exceeds {tolerance:e}")]
    NotSymmetric { asymmetry: f64, tolerance: f64 },

    #[error("Jacobi iteration did not converge in {} sweeps (off-diagonal norm {:e})", .0.sweeps_used, .0.off_diag_norm)]
    NoConvergence(Box<EigenResult>),

    #[error("empty range: n_min = {n_min} exceeds n_max = {n_max}")]
    EmptyRange { n_min: usize, n_max: usize },
}
