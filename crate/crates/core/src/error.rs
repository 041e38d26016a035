use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A symbolic expansion produced more monomials than the configured cap.
    #[error("term cap exceeded: {terms} monomials (cap {cap})")]
    TermCapExceeded { cap: usize, terms: usize },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operators do not commute")]
    NotCommuting,

    #[error("no relation: {0}")]
    NoRelation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::TermCapExceeded { .. })
    }
}
