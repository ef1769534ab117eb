use thiserror::Error;

use crate::report::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("invalid element name {0:?}")]
    InvalidName(String),
    #[error("cover relation has a cycle through `{0}`")]
    CyclicCovers(String),
    #[error("cover `{0}` < `{1}` is implied by the other covers")]
    RedundantCover(String, String),
    #[error("{0:?} is not a convex subtree")]
    NotConvex(Vec<String>),
    #[error("poset is not a thicket")]
    NotThicket,
    #[error("malformed structure: {0}")]
    Malformed(String),
    #[error("validation failed\n{0}")]
    Invalid(ValidationReport),
    #[error("mismatched endpoints: {0}")]
    EndpointMismatch(String),
    #[error("map is not an epimorphism: {0}")]
    NotEpi(String),
    #[error("boundary level {k} out of range for a cell of level {level}")]
    LevelOutOfRange { k: usize, level: usize },
    #[error("cells are not composable along {k}: {detail}")]
    NotComposable { k: usize, detail: String },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("declared kind does not match: {0}")]
    KindMismatch(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
