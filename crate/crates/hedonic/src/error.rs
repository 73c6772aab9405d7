use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed textual input (game files, partition strings, DIMACS).
    #[error("parse error at line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },

    /// A value violates a documented precondition or invariant.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An exhaustive search was asked to exceed its configured cap.
    #[error("{what} requires {requested} but the cap is {cap}")]
    Capacity {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    /// A CNF formula violates an assumption of the requested reduction.
    #[error("reduction assumption violated: {0}")]
    Assumption(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            message: msg.into(),
        }
    }
}
