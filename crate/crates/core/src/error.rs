use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input violates an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured precision ceiling was reached before a decision.
    #[error("precision limit reached: {0}")]
    Precision(String),
    /// Input lies outside the documented supported range.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A bounded search ran out of budget.
    #[error("search limit reached: {0}")]
    SearchLimit(String),
    /// An internal self-check failed. Always a bug.
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by running out of a computational budget.
    pub fn is_limit(&self) -> bool {
        matches!(self, Error::Precision(_) | Error::SearchLimit(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
