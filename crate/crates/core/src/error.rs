use thiserror::Error;

use crate::graph::{HalfEdge, VertexId, Violation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph violates invariants: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown component {0}")]
    UnknownComponent(usize),
    #[error("unknown half-edge {0}")]
    UnknownHalfEdge(HalfEdge),
    #[error("graph admits no source-sink structure")]
    NoSourceSink,
    #[error("expected a connected graph")]
    NotConnected,
    #[error("{0}")]
    Loop(String),
    #[error("unknown chord label {0}")]
    UnknownLabel(u32),
    #[error("{0}")]
    Diagram(String),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}
