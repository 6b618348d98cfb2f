use thiserror::Error;

/// Errors raised by the evaluation and verification layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum MzvError {
    #[error("precision mismatch: {left} vs {right} digits")]
    PrecisionMismatch { left: u32, right: u32 },

    #[error("operands live in different numeric contexts: {0}")]
    ContextMismatch(String),

    #[error("working precision must be at least {min} digits, got {got}")]
    PrecisionTooLow { got: u32, min: u32 },

    #[error("series cap mismatch: {left} vs {right}")]
    CapMismatch { left: usize, right: usize },

    #[error("series exponential needs a zero constant term")]
    NonZeroConstant,

    #[error("series reciprocal needs a nonzero constant term")]
    ZeroConstant,

    #[error("invalid multi-index: {0}")]
    InvalidIndex(String),

    #[error("index ({0}) is not admissible (first part must be at least 2)")]
    NotAdmissible(String),

    #[error("word must end with e1 to define a convergent iterated integral")]
    DivergentWord,

    #[error("|z| = {abs} exceeds the configured limit {limit}")]
    ArgumentOutOfRange { abs: f64, limit: f64 },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for MzvError {
    fn from(e: std::io::Error) -> Self {
        MzvError::Io(e.to_string())
    }
}

pub type Result<T, E = MzvError> = std::result::Result<T, E>;
