use thiserror::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared across all modules.
///
/// `Domain` covers mathematical precondition violations (callers passed a
/// value outside the documented domain), `LimitExceeded` covers configured
/// resource ceilings (work refused, not wrong), and the remaining variants
/// are structural misuses of the group/form APIs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured resource ceiling would be exceeded.
    #[error("limit exceeded: {what} requires {required}, configured limit is {limit}")]
    LimitExceeded {
        what: &'static str,
        required: u64,
        limit: u64,
    },

    /// An element or subgroup was used with a group of a different shape.
    #[error("parent mismatch: element/subgroup does not belong to this group")]
    ParentMismatch,

    /// Two forms of different discriminants were combined.
    #[error("discriminant mismatch: {0} vs {1}")]
    DiscriminantMismatch(i64, i64),

    /// A discriminant that must be fundamental is not.
    #[error("not a fundamental discriminant: {0}")]
    NotFundamental(i64),

    /// A constant certification failed; this indicates an implementation bug
    /// or a misstated constant, never a tolerable runtime condition.
    #[error("certification failed: {0}")]
    CertificationFailed(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
