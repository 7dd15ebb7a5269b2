//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("field mismatch: operands live over F_{left} and F_{right}")]
    FieldMismatch { left: u32, right: u32 },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("bad reduction at {place}")]
    BadReduction { place: String },

    #[error("{what} is not invertible modulo {place}")]
    NotInvertible { what: String, place: String },

    #[error("coefficient algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("resource ceiling exceeded: {what} = {requested} > limit {limit}")]
    Resource {
        what: &'static str,
        requested: String,
        limit: String,
    },

    #[error("internal contract violation: {0}")]
    Contract(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn resource(what: &'static str, requested: impl ToString, limit: impl ToString) -> Self {
        Error::Resource {
            what,
            requested: requested.to_string(),
            limit: limit.to_string(),
        }
    }

    /// Process exit status used by the CLI: 2 for precondition failures,
    /// 3 for resource ceilings, 1 for internal contract violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource { .. } => 3,
            Error::Contract(_) => 1,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
