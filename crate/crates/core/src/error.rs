use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid pair ({u}, {v}) for order {order}")]
    InvalidPair { u: usize, v: usize, order: usize },

    #[error("invalid order {order}: {reason}")]
    InvalidOrder { order: usize, reason: &'static str },

    #[error("expected {expected} signs for order {order}, got {got}")]
    SignCount {
        order: usize,
        expected: usize,
        got: usize,
    },

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("invalid exchange: {0}")]
    InvalidExchange(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("order {order} exceeds the oracle limit of {limit}")]
    OracleLimit { order: usize, limit: usize },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
