//! Error type shared by every module of the crate.

use thiserror::Error;

use crate::complex::Violation;

/// Errors reported by the library.
///
/// Every variant names the violated precondition so that callers (and the
/// command-line front end) can report it without further context.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    Dimension {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("cannot parse exact number from {0:?}")]
    Parse(String),

    /// Unreadable or malformed input, with its location when known.
    #[error("invalid input: {0}")]
    Input(String),

    #[error("index {index} out of range (size {size}) in {context}")]
    IndexOutOfRange {
        context: &'static str,
        index: usize,
        size: usize,
    },

    #[error("invalid complex: {}", summarize(.0))]
    Invalid(Vec<Violation>),

    #[error("cell {cell} is degenerate (its vertices do not span the ambient space)")]
    DegenerateCell { cell: usize },

    #[error("cell group is not connected in the dual graph")]
    DisconnectedGroup,

    #[error("all points are collinear")]
    Collinear,

    #[error("points are not collinear")]
    NotCollinear,

    #[error("section height must be nonzero")]
    ZeroHeight,

    #[error("direction must be nonzero")]
    ZeroDirection,

    #[error("precondition failed: {0}")]
    Precondition(String),
}

fn summarize(violations: &[Violation]) -> String {
    let parts: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
    parts.join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
