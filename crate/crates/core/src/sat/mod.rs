//! 2-balanced 3-SAT instances and the reduction to tree-child orientation.

mod balance;
mod cnf;
mod gadget;
mod gmap;
mod nphi;

use thiserror::Error;

use crate::net::ValidationReport;
use crate::orient::OrientError;

pub use balance::{
    sat_bruteforce, validate_2balanced, BalanceReport, BalanceViolation, SAT_BRUTEFORCE_LIMIT,
};
pub use cnf::{Assignment, CnfError, CnfInstance, Literal, Occurrence};
pub use gadget::{
    build_u_phi, connection_gadget, expected_leaf_count, reticulation_gadget, GadgetCopy,
    GadgetFragment, GadgetKind, GadgetMap, CONNECTION_EDGES, RETICULATION_EDGES,
};
pub use gmap::{parse_gmap, serialize_gmap};
pub use nphi::{
    build_n_phi, extract_assignment, CONNECTION_BACKWARD, CONNECTION_FORWARD, RETICULATION_ARCS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SatError {
    #[error("instance is not 2-balanced: {0}")]
    NotTwoBalanced(BalanceReport),
    #[error("assignment does not satisfy the formula")]
    UnsatisfiedAssignment,
    #[error("assignment has {found} values for {expected} variables")]
    AssignmentLength { expected: usize, found: usize },
    #[error("{n} variables exceed the brute-force limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("network is not tree-child")]
    NotTreeChild,
    #[error("invalid rooted network: {0}")]
    InvalidNetwork(ValidationReport),
    #[error("gadget state contradicts a tree-child orientation: {0}")]
    InconsistentGadgetState(String),
    #[error(transparent)]
    Orient(#[from] OrientError),
}
