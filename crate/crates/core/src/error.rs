use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid linking matrix: {0}")]
    InvalidMatrix(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("[1,{k}] is not a block of the permutation")]
    NotABlock { k: usize },

    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("unsupported order {n}: {reason}")]
    UnsupportedOrder { n: usize, reason: String },

    #[error("guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("inconsistent triple linking numbers: {0}")]
    InconsistentTriples(String),

    #[error("not switching-equivalent: {0}")]
    NotEquivalent(String),

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for errors caused by malformed input text rather than a
    /// well-formed input the operation rejects.
    pub fn is_malformed_input(&self) -> bool {
        matches!(
            self,
            Error::InvalidPermutation(_) | Error::InvalidMatrix(_) | Error::Parse(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
