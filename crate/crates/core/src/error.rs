use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two values live in different ambient polynomial rings.
    #[error("ambient mismatch: expected {expected} variables, found {found}")]
    Dimension { expected: usize, found: usize },

    /// A precondition of the operation does not hold.
    #[error("{0}")]
    Domain(String),

    /// A configured size cap was exceeded.
    #[error("{what} is {actual}, exceeding the cap of {cap}")]
    Resource {
        what: &'static str,
        cap: usize,
        actual: usize,
    },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("characteristic {0} is not prime")]
    NotPrime(u64),

    /// Two routes that must agree did not. Always a bug.
    #[error("internal consistency failure: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, column: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: msg.into(),
        }
    }

    /// True for errors caused by caps rather than by bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
