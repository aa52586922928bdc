use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group order {order} exceeds the table limit of {limit}")]
    OrderTooLarge { order: usize, limit: usize },

    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),

    #[error("invalid construction: {0}")]
    InvalidConstruction(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    /// Coset enumeration gave up; the presented group may be larger than the
    /// bound or infinite.
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
