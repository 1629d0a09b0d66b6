use thiserror::Error;

/// Errors raised by the simulator and analysis routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Input violated a precondition (shape, range, length, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// An iterative solver ran out of sweeps.
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:e})")]
    Convergence { sweeps: usize, residual: f64 },

    /// The requested operation is defined only for a narrower class of encodings.
    #[error("unsupported encoding: {0}")]
    UnsupportedEncoding(String),

    /// Analytic enumeration would exceed the configured term budget.
    #[error("analytic extraction needs {terms} multi-index pairs (limit {limit}); use sampling extraction instead")]
    TooLarge { terms: u128, limit: u128 },
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    /// Capability errors are the ones a caller cannot fix by correcting input values.
    pub fn is_capability(&self) -> bool {
        matches!(self, Error::UnsupportedEncoding(_) | Error::TooLarge { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
