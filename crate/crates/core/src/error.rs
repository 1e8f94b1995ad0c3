use crate::symbolic::rat::ArithError;
use crate::symbolic::text::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource bound exceeded: {what} has size {size}, bound {bound}")]
    Resource { what: String, size: usize, bound: usize },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("limit diverges at entry ({row}, {col}) with hbar-degree gap {gap}")]
    Limit { row: usize, col: usize, gap: i32 },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
