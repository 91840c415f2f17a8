use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("invalid input: {0}")]
    Input(String),

    /// A word that does not label a closed path at the base vertex.
    #[error("word {word} is not a loop at the base vertex")]
    Membership { word: String },

    /// A search or enumeration exceeded its configured bound.
    #[error("resource limit exceeded: {what} (bound {bound}, explored {explored})")]
    ResourceLimit {
        what: String,
        bound: u64,
        explored: u64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
