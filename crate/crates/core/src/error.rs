use thiserror::Error;

/// Errors reported by the library.
///
/// `Domain` is an input that violates a documented precondition, `Resource`
/// is an input that is valid but beyond the configured desk-scale caps, and
/// `Internal` flags a broken invariant (a bug, not a user error).
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Domain(String),
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
