use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("text must contain at least one symbol")]
    EmptyText,

    #[error("span ({l}, {r}) is outside 1..={n} or reversed")]
    OutOfRange { l: usize, r: usize, n: usize },

    #[error("unknown node {0}")]
    UnknownNode(u32),

    #[error("unknown class {0}")]
    UnknownClass(u32),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("index file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
