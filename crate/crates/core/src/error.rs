use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-finite float entry")]
    NonFinite,

    /// A search or allocation would exceed a hard cap.
    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded { what: String, size: u128, cap: u128 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The input is well formed but the operation has no answer for it.
    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn cap(what: impl Into<String>, size: u128, cap: u128) -> Self {
        Error::CapExceeded {
            what: what.into(),
            size,
            cap,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
