use thiserror::Error;

/// Errors raised by the simulation library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter is outside its supported domain.
    #[error("configuration error: {0}")]
    Config(String),

    /// A scheme table violates one of its structural conditions.
    #[error("scheme validation failed: {0}")]
    SchemeValidation(String),

    /// Caller passed inputs of the wrong shape.
    #[error("usage error: {0}")]
    Usage(String),

    /// Receiver produced an activation pattern that is not in the scheme table.
    #[error("detection consistency error: {0}")]
    DetectionConsistency(String),

    /// Input for which the requested quantity is undefined.
    #[error("undefined input: {0}")]
    UndefinedInput(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

pub(crate) fn config<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Config(msg.into()))
}
