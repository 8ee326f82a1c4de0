use thiserror::Error;

/// Errors surfaced by the arithmetic layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A size limit was crossed (degree bound, search budget, factoring budget).
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// An internal identity that should hold unconditionally failed; this
    /// signals an arithmetic bug, not a bad input.
    #[error("internal consistency error: {0}")]
    Internal(String),

    /// A verification clause failed on concrete data.
    #[error("verification failure: {0}")]
    Verification(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
