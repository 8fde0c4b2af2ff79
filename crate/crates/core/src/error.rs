use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition on the inputs does not hold.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured size guard (partition size, Bell order, permutation degree) was exceeded.
    #[error("size guard: {what} = {value} exceeds the limit {limit}")]
    SizeGuard {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    /// An enumeration would visit more elements than the budget allows.
    #[error("budget refused: {what} needs {required} elements but the budget is {budget}")]
    Budget {
        what: String,
        required: String,
        budget: u64,
    },

    /// The requested operation is outside the hypotheses it is valid for.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// No closed form covers the cycle type; only the enumeration oracle does.
    #[error("no closed form for cycle type {0}; use the oracle")]
    NoClosedForm(String),

    /// Every evaluation route was refused.
    #[error("no evaluation path available: {}", .refusals.join("; "))]
    NoPath { refusals: Vec<String>, budget_only: bool },

    /// An internal consistency check failed. This is a bug, not a user error.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// True for refusals caused by a size guard or an enumeration budget.
    pub fn is_budget(&self) -> bool {
        match self {
            Error::Budget { .. } | Error::SizeGuard { .. } => true,
            Error::NoPath { budget_only, .. } => *budget_only,
            _ => false,
        }
    }
}
