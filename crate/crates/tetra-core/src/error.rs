use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),
    #[error("precision cap of {cap} bits reached before the sign was resolved")]
    PrecisionCap { cap: u32 },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
