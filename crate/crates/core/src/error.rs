use thiserror::Error as ThisError;

use crate::term::Position;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unknown constant `{name}` at byte {offset}")]
    UnknownConstant { name: String, offset: usize },

    #[error("definition `{name}` (line {line}): {message}")]
    Definition { name: String, line: usize, message: String },

    #[error("position {0} is not defined in the term")]
    UndefinedPosition(Position),

    #[error("malformed position `{0}`")]
    BadPosition(String),

    #[error("no redex at position {0}")]
    NotARedex(Position),

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("bad parameter for `{entry}`: {message}")]
    BadParameter { entry: String, message: String },

    #[error("unknown reproduction id `{0}`")]
    UnknownRepro(String),

    #[error("tree has no node at path {0}")]
    NoSuchNode(String),
}
