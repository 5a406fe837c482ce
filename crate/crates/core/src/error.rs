use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A pivot of the signed factorization fell below tolerance: `(T, s)` is
    /// outside the domain of the signed step.
    #[error("T - sI is not almost invertible: pivot {index} = {pivot:e}")]
    AlmostSingular { index: usize, pivot: f64 },

    #[error("T - sI is singular (|pivot| = {pivot:e})")]
    Singular { pivot: f64 },

    /// An iterative method ran out of budget (`method` names it).
    #[error("{method} did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        method: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("Lanczos breakdown at step {step}: beta = {beta:e}")]
    Breakdown { step: usize, beta: f64 },

    #[error("duplicate eigenvalue: gap {gap:e} within tolerance")]
    DuplicateEigenvalue { gap: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("trace was produced by strategy `{0}`, expected wilkinson")]
    WrongStrategy(String),

    #[error("calibration failed: {0}")]
    CalibrationFailed(String),

    #[error("step {k} failed: {source}")]
    StepFailure { k: usize, source: Box<Error> },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
