use thiserror::Error;

use crate::map::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("census bound exceeded: n + 2m = {requested} > {bound}")]
    BoundExceeded { requested: usize, bound: usize },
    #[error("invalid map: {0}")]
    InvalidMap(Violation),
    #[error("step budget of {budget} exhausted")]
    BudgetExhausted { budget: usize },
    #[error("revealed region does not determine the requested structure")]
    InsufficientRegion,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
