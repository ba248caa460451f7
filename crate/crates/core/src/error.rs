use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at byte {offset} (token `{token}`): {reason}")]
    Parse { token: String, offset: usize, reason: String },

    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("free word length budget exceeded ({len} > {budget})")]
    BudgetExceeded { len: usize, budget: usize },

    #[error("homomorphism has not been verified")]
    Unverified,

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
