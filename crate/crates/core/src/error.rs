use thiserror::Error;

/// Errors raised by the toolkit. Verdict-level failures (an inequality that
/// does not hold, a polynomial that is not Lorentzian) are reported as values,
/// never as errors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or dimensionally inconsistent input.
    #[error("input error: {0}")]
    Input(String),
    /// Input is well-formed but outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A documented precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A size cap was exceeded.
    #[error("cap exceeded: {0}")]
    Cap(String),
    /// Model-file schema violation.
    #[error("schema error at {location}: {message}")]
    Schema { location: String, message: String },
    /// An internal consistency check failed.
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn schema(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            location: location.into(),
            message: message.into(),
        }
    }
}
