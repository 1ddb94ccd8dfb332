use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("divisor count {count} exceeds the cap of {cap}")]
    DivisorCapExceeded { count: u64, cap: u64 },
    #[error("{m} and {n} are not coprime (gcd = {gcd})")]
    NotCoprime { m: u64, n: u64, gcd: u64 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for accumulator or domain-size overflows, as opposed to inputs
    /// that violate a precondition.
    pub fn is_overflow(&self) -> bool {
        matches!(self, Error::Overflow(_) | Error::DivisorCapExceeded { .. })
    }
}
