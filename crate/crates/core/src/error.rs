use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation of 1..{len}: {reason}")]
    InvalidPermutation { len: usize, reason: String },

    #[error("operation requires a nonempty permutation")]
    EmptyPermutation,

    #[error("invalid chessboard: {0}")]
    InvalidChessboard(String),

    #[error("permutation {0} contains the forbidden pattern 213")]
    Contains213(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("invalid plane graph: {0}")]
    InvalidGraph(String),

    #[error("graph is not maximal planar: {0}")]
    NotMaximal(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("Strahler bound {found} exceeds the requested {limit}")]
    StrahlerTooLarge { found: u32, limit: u32 },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// An internal invariant broke. Seeing this is a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
