use thiserror::Error;

/// Errors raised by the lab.
#[derive(Debug, Error)]
pub enum Error {
    #[error("argument outside the function domain: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("field does not match the transform plan: {0}")]
    PlanMismatch(String),
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("exponent hypotheses not satisfied: {0}")]
    Hypothesis(String),
    #[error("function is not radial in the frequency variable: {0}")]
    NonRadial(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
