use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A reference to a vertex or edge that does not exist, an overlap
    /// where disjointness is required, or a malformed argument.
    #[error("input error: {0}")]
    Input(String),

    /// BDG text that does not parse.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A size guard on an exhaustive computation was exceeded.
    #[error("size guard exceeded: {0}")]
    Guard(String),

    /// An operation was invoked on a graph outside the class it expects.
    #[error("class mismatch: expected {expected}, got {found}")]
    ClassMismatch { expected: String, found: String },

    /// A lemma hypothesis required by a construction does not hold.
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}
