//! Text formats: UPN/1 edge lists, Newick and extended Newick, DIMACS CNF.

mod dimacs;
mod newick;
mod upn;

use thiserror::Error;

use crate::net::ValidationReport;

pub use dimacs::{parse_dimacs_cnf, serialize_dimacs_cnf};
pub use newick::{parse_enewick, parse_newick_tree, serialize_enewick, serialize_newick_tree};
pub use upn::{parse_upn, serialize_upn};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("invalid network: {0}")]
    Validation(ValidationReport),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("directed cycle through {0}")]
    Cycle(String),
    #[error("not binary at {line}:{col}: vertex of degree {degree}")]
    NotBinary { line: usize, col: usize, degree: usize },
    #[error("clause {clause} at line {line} has {found} literals, expected 3")]
    ClauseArity { line: usize, clause: usize, found: usize },
}

impl ParseError {
    pub(crate) fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            col,
            msg: msg.into(),
        }
    }
}

/// Leaf labels are restricted to `[A-Za-z0-9_.-]+`.
pub fn is_valid_label(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(is_label_byte)
}

pub(crate) fn is_label_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || matches!(b, b'_' | b'.' | b'-')
}
