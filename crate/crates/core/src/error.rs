use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The integrator ran out of budget. The partial estimate is kept so
    /// callers can still report it.
    #[error("no convergence in {context}: value {value:e}, error estimate {abs_err:e}")]
    NonConvergence { context: String, value: f64, abs_err: f64 },

    #[error("step size underflow at t = {t}")]
    StepUnderflow { t: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
