use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The caller violated a precondition.
    #[error("usage error: {0}")]
    Usage(String),
    /// A constructed object failed its structural checks.
    #[error("validation error: {0}")]
    Validation(String),
    /// A configured size or enumeration cap would be exceeded.
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    /// The construction does not apply to this input.
    #[error("refused: {0}")]
    Refused(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Validation(msg.into()))
}

pub(crate) fn over_cap<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Resource(msg.into()))
}
