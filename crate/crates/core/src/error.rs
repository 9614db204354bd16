use thiserror::Error;

/// Errors surfaced by the numerical kernel and the physics layers on top of it.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix data length {len} does not match {rows}x{cols}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        len: usize,
    },

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("density matrix dimension must be 2, 4 or 8, got {0}")]
    InvalidStateDimension(usize),

    #[error("matrix is not Hermitian: max |H - H^dag| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("trace is {trace} but must be 1 within tolerance")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    EigensolverDidNotConverge { sweeps: usize, off_norm: f64 },

    #[error("partial trace requires a non-empty proper subset of the spins")]
    InvalidKeepSet,

    #[error("rotation generator index must be in 1..=6, got {0}")]
    InvalidGeneratorIndex(usize),

    #[error("noise parameter {name} must be positive, got {value}")]
    InvalidNoiseParameter { name: &'static str, value: f64 },

    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),

    #[error("decoherence factor must lie in [0, 1], got {0}")]
    MuOutOfRange(f64),

    #[error("Monte Carlo sampling requires the exact finite-bandwidth regime")]
    McRequiresExactRegime,

    #[error("Monte Carlo configuration invalid: {0}")]
    McConfig(&'static str),

    #[error("Kraus set violates completeness: max |sum K^dag K - I| = {deviation:e}")]
    KrausIncomplete { deviation: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
