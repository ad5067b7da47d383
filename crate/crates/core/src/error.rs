use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A local factor or c-function was evaluated at one of its poles.
    #[error("pole: {0}")]
    Pole(String),

    /// A reciprocal was requested for a value that has none in its ring.
    #[error("not invertible: {0}")]
    NotInvertible(String),

    /// A truncated sum failed to show geometric decay.
    #[error("convergence failure: {0}")]
    Convergence(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Input data is well-formed but inconsistent (bounds, missing primes).
    #[error("data error: {0}")]
    Data(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("not implemented in v1: {0}")]
    NotImplemented(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
