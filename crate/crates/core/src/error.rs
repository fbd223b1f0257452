use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("complete elliptic integral of the first kind diverges at parameter 1")]
    Divergent,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("degenerate immersion: {0}")]
    Degeneracy(String),
    #[error("branch error: {0}")]
    Branch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
