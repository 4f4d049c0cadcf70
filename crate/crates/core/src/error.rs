use thiserror::Error;

use crate::gauss::CrossingId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("crossing {0} carries different signs at its two endpoints")]
    SignMismatch(CrossingId),
    #[error("crossing {0} must occur exactly once as O and once as U")]
    BadMultiplicity(CrossingId),
    #[error("crossing ids must be positive")]
    ZeroCrossingId,
    #[error("component index {index} out of range for a diagram with {components} components")]
    IndexOutOfRange { index: usize, components: usize },
    #[error("a component pair needs two distinct indices, got ({0}, {0})")]
    SamePair(usize),
    #[error("unknown crossing {0}")]
    UnknownCrossing(CrossingId),
    #[error("expected a one-component diagram, got {0} components")]
    NotAKnot(usize),
    #[error("the diagram carries no virtual crossing count")]
    MissingMetadata,
    #[error("bound not applicable: {0}")]
    NotApplicable(String),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("pretzel parameters must be a non-empty list of positive integers")]
    EmptyParams,
    #[error("unknown pretzel label {0}")]
    UnknownLabel(u32),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}
