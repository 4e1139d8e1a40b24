use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("infinite-dimensional algebra: no power of the arrow ideal lies in the relation ideal up to path length {0}")]
    InfiniteDimensional(usize),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("configured cap exceeded: {0}")]
    CapExceeded(String),
    #[error("isomorphism undecided: {0}")]
    Undecided(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("operation requires a finite field")]
    InfiniteField,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invariant(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvariantViolation(msg()))
    }
}
