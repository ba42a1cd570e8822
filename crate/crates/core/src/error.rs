use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole: denominator vanishes at v = sqrt({q})")]
    Pole { q: u64 },

    #[error("q = {0} is not a prime")]
    NotPrime(u64),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("tau is not an involutive automorphism: {0}")]
    NotAnInvolution(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("relation hypotheses not met: {0}")]
    Hypothesis(String),

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("budget exceeded: {what} needs {size} but the limit is {limit}")]
    Budget {
        what: String,
        size: u128,
        limit: u128,
    },

    #[error("grade mismatch: {0}")]
    Grade(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("inexact division: {0}")]
    Inexact(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}
