use thiserror::Error;

/// Failure kinds shared by every module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A size or shot cap was exceeded.
    #[error("resource limit: {0}")]
    Resource(String),
    /// Not enough independent data yet (Simon's linear system).
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    /// Something that cannot happen for a well-formed state did happen.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
