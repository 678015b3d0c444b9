use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parameter overflow: {0}")]
    Overflow(String),

    #[error("malformed theta {0:?}: expected NUM/DEN with 0 < NUM/DEN < 1")]
    MalformedTheta(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("evaluation rejected: {0}")]
    Rejected(String),

    #[error("unknown claim {0:?}")]
    UnknownClaim(String),

    #[error("cache io: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
