use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller violated an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A power series with zero constant term was inverted or divided by.
    #[error("series is not invertible: constant term is zero")]
    NotInvertible,
    /// Input data is inconsistent with the mathematics (e.g. a non-integral w_n).
    #[error("invalid data: {0}")]
    Data(String),
    /// An enumeration exceeded its budget.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// The requested family is not supported by this operation.
    #[error("unsupported family: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Contract(msg.into()))
}
