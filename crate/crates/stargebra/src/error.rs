use thiserror::Error;

/// Coarse classification used by callers (the CLI maps these to exit codes).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input: bad JSON, bad Cayley table, non-finite entries.
    InvalidInput,
    /// A documented operation precondition does not hold.
    PreconditionViolated,
    /// An iteration failed to converge or a residual exceeded tolerance.
    NumericalFailure,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix has non-finite entries ({0})")]
    NonFinite(String),

    #[error("invalid group specification: {0}")]
    InvalidGroup(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("element is not Hermitian: {0}")]
    NotHermitian(String),

    #[error("element is not normal: {0}")]
    NotNormal(String),

    #[error("element is not positive: {0}")]
    NotPositive(String),

    #[error("element is not invertible: {0}")]
    NotInvertible(String),

    #[error("functional is not positive: {0}")]
    FunctionalNotPositive(String),

    #[error("algebra is not commutative: {0}")]
    NotCommutative(String),

    #[error("representation is degenerate: common null space has dimension {null_dim}")]
    DegenerateRepresentation { null_dim: usize },

    #[error("vector is not cyclic: Krylov closure has dimension {closure_dim} in ambient dimension {ambient_dim}")]
    NotCyclic {
        closure_dim: usize,
        ambient_dim: usize,
    },

    #[error("function undefined or non-finite at spectral point {0}")]
    UndefinedAtPoint(String),

    #[error("pole at {pole} lies within {distance:.3e} of the spectrum")]
    PoleOnSpectrum { pole: String, distance: f64 },

    #[error("iteration did not converge: {0}")]
    NoConvergence(String),

    #[error("residual {residual:.3e} exceeds tolerance {tolerance:.3e} in {context}")]
    ResidualTooLarge {
        context: String,
        residual: f64,
        tolerance: f64,
    },

    #[error("invalid rational function: {0}")]
    InvalidRational(String),

    #[error("JSON error: {0}")]
    Json(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            NonFinite(_) | InvalidGroup(_) | InvalidRational(_) | Json(_) => ErrorKind::InvalidInput,
            DimensionMismatch(_)
            | Precondition(_)
            | NotHermitian(_)
            | NotNormal(_)
            | NotPositive(_)
            | NotInvertible(_)
            | FunctionalNotPositive(_)
            | NotCommutative(_)
            | DegenerateRepresentation { .. }
            | NotCyclic { .. }
            | UndefinedAtPoint(_)
            | PoleOnSpectrum { .. } => ErrorKind::PreconditionViolated,
            NoConvergence(_) | ResidualTooLarge { .. } => ErrorKind::NumericalFailure,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
