//! Error types shared across the crate.

use thiserror::Error;

/// Errors from parsing the graph and local-digraph text formats.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed header: expected `{expected} <n>`, got {got:?}")]
    MalformedHeader { expected: &'static str, got: String },
    #[error("malformed edge line: {0:?}")]
    MalformedEdge(String),
    #[error("vertex id {id} out of range for {n} vertices")]
    VertexOutOfRange { id: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
}

/// A configured size limit was exceeded.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{what}: size {actual} exceeds limit {limit}")]
pub struct LimitError {
    pub what: &'static str,
    pub actual: usize,
    pub limit: usize,
}

/// Errors about matchings handed to operations that need one.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("pair {0}-{1} is not an edge of the graph")]
    NotAnEdge(usize, usize),
    #[error("vertex {0} is used by more than one pair")]
    Overlapping(usize),
    #[error("matching is not perfect: vertex {0} is uncovered")]
    NotPerfect(usize),
    #[error("vertex {id} out of range for {n} vertices")]
    OutOfRange { id: usize, n: usize },
}

/// Precondition violations in constructions and counting operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{0}")]
pub struct InvalidInput(pub String);

impl InvalidInput {
    pub fn new(msg: impl Into<String>) -> Self {
        InvalidInput(msg.into())
    }
}
