use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A value failed one of its domain constraints (PSD, trace, parameter ranges).
    #[error("validation failed: {0}")]
    Validation(String),

    /// Parameters are admissible for building a generator but the asymptotic
    /// theory does not apply (`c = 0` or `|b| = a`).
    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("no convergence after {doublings} doublings (last residual {residual:e})")]
    NonConvergence { residual: f64, doublings: u32 },

    #[error("input lies outside the span covered by the analytic map: {0}")]
    OutsideAnalyticSpan(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
