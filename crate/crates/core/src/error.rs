use thiserror::Error;

/// Errors produced by the numerical kernels and the SRG constructions built on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SrgError {
    #[error("shape mismatch: {op} expects {expected}, got {got}")]
    ShapeMismatch {
        op: &'static str,
        expected: String,
        got: String,
    },

    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("matrix is not Hermitian: ||A - A*||_F = {asymmetry:e}")]
    NotHermitian { asymmetry: f64 },

    #[error("matrix is not Hermitian positive definite: smallest eigenvalue {min_eigenvalue:e}")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("{routine} did not converge after {iterations} iterations")]
    NotConverged {
        routine: &'static str,
        iterations: usize,
    },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("point {re} + {im}i lies outside the closed unit disk")]
    OutOfDisk { re: f64, im: f64 },

    #[error("empty input to {0}")]
    EmptyInput(&'static str),

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("matrix has non-real entries; the real field requires im = 0")]
    NonRealEntries,

    #[error("scaling matrix is singular or ill-conditioned (condition estimate {condition:e})")]
    SingularScaling { condition: f64 },

    #[error("spectral factorization is degenerate: numerator and denominator share a zero at s = {re} + {im}i on the imaginary axis")]
    FactorizationDegenerate { re: f64, im: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, SrgError>;
