//! Crate-wide error type.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation
    /// (probability outside (0,1), nonpositive scale, non-monotone grid, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The request is well-posed but intentionally not supported by this
    /// implementation (e.g. a bounded-interval scheme on an unbounded law).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Construction would exceed a hard resource cap.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// A loss or density evaluation produced a non-finite value.
    #[error("non-finite value at sample {index}")]
    NonFinite { index: usize },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}
