use thiserror::Error;

/// Errors raised across the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("structure is not a ring")]
    NotARing,

    #[error("table is not a monoid: {0}")]
    NotAMonoid(String),

    #[error("map is not a brachymorphism")]
    NotBrachymorphism,

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: String, cap: usize },

    #[error("node budget of {budget} exhausted after {found} results")]
    BudgetExhausted { budget: u64, found: usize },

    #[error("fixture mismatch: {0}")]
    FixtureMismatch(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    /// True for errors caused by a resource cap or search budget.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::BudgetExhausted { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
