use thiserror::Error;

use crate::word::Letter;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty word")]
    EmptyWord,
    #[error("letter index must be at least 1")]
    ZeroIndex,
    #[error("malformed letter token `{0}`")]
    BadToken(String),
    #[error("compact form requires single-digit indices: {0}")]
    NotCompact(String),
    #[error("letter {0} does not occur in the word")]
    AbsentLetter(Letter),
    #[error("a letter cannot alternate with itself ({0})")]
    SameLetter(Letter),
    #[error("letter {letter} occurs {found} times, occurrence {wanted} requested")]
    MissingOccurrence {
        letter: Letter,
        wanted: usize,
        found: usize,
    },
    #[error("word is not uniform")]
    NotUniform,
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Letter),
    #[error("self-loop on {0}")]
    SelfLoop(Letter),
    #[error("edge list line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("invalid pair partition: {0}")]
    BadPartition(String),
    #[error("construction failed verification: {0}")]
    Construction(String),
    #[error("inconsistent split decomposition: {0}")]
    BadSplit(String),
    #[error("set {0:?} is not splittable in the given word")]
    NotSplittable(Vec<Letter>),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("search error: {0}")]
    Search(String),
}

pub type Result<T> = std::result::Result<T, Error>;
