//! Error type shared by all solver modules.

use thiserror::Error;

/// Errors produced by discretization, structured-matrix and solver routines.
#[derive(Debug, Error)]
pub enum FracError {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Array or grid shapes do not conform.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A triangular matrix has a zero diagonal entry.
    #[error("singular matrix: {0}")]
    Singular(String),

    /// A scalar nonlinear solve inside the waveform smoother failed.
    #[error("scalar solve failed at spatial line {line}, time level {level}: {msg}")]
    ScalarSolve {
        line: usize,
        level: usize,
        msg: String,
    },

    /// Dense eigenvalue computation did not converge.
    #[error("eigenvalue computation failed: {0}")]
    Eigen(String),
}

pub type Result<T> = std::result::Result<T, FracError>;
