use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("malformed packing: {0}")]
    MalformedPacking(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("inconsistent input: {0}")]
    InconsistentInput(String),

    #[error("unsupported verification regime: {0}")]
    UnsupportedRegime(String),
}

pub type Result<T> = std::result::Result<T, Error>;
