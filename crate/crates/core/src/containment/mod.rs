//! Tree containment for 3-cuttable networks.
//!
//! The decision procedure rejects on conflicting splits, branches on
//! non-trivial cut-edges until every network is simple, and then shrinks a
//! simple network one eliminated edge at a time with the four reduction rules.
//! A backtracking embedding search serves as the independent oracle.

mod algorithm;
mod embedding;
mod entangled;
mod oracle;
mod pendant;
mod rules;
mod splits;
mod trace;

#[cfg(test)]
mod tests;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::net::{cut_edges, Edge, NetError, UndirectedNet, ValidationReport, VertexId};

pub use algorithm::three_cuttable_tc;
pub use embedding::{verify_embedding, Embedding, EmbeddingCheck, EmbeddingFailure, EmbeddingProperty};
pub use entangled::{entangled_path, entangled_paths_bruteforce, is_entangled, simple_paths};
pub use oracle::{display_oracle, display_oracle_with_budget, DEFAULT_ORACLE_BUDGET};
pub use pendant::{find_pendant_structures, pendant_quads, pendant_triples, PendantStructure};
pub use rules::{apply_reduction, Certificate, RuleCase, RuleOutcome, Verdict};
pub use splits::{
    branch_on_cut_edge, conflicting_split, fresh_label_pair, simple_parts, split_network_at, tree_splits,
};
pub use trace::{parse_trace, replay_trace, serialize_trace, Replay, ReducedStep, Trace, TraceEvent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContainError {
    #[error("tree and network have different leaf sets")]
    LabelSetMismatch,
    #[error("tree input is not a binary phylogenetic tree: {0}")]
    NotATree(String),
    #[error("invalid network: {0}")]
    InvalidNetwork(ValidationReport),
    #[error("edge {0} is a trivial cut-edge")]
    TrivialCutEdge(Edge),
    #[error("edge {0} is not a cut-edge of the network")]
    NotCutEdge(Edge),
    #[error("no tree edge induces the split of cut-edge {0}")]
    NoMatchingTreeEdge(Edge),
    #[error("tree has {0} leaves, pendant structures need at least 4")]
    TooFewLeaves(usize),
    #[error("network is not simple: {0} is a non-trivial cut-edge")]
    NotSimple(Edge),
    #[error("network is not 3-cuttable")]
    NotThreeCuttable,
    #[error("search budget of {0} steps exceeded")]
    BudgetExceeded(usize),
    #[error("trace does not replay: {0}")]
    BadTrace(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Net(#[from] NetError),
}

/// One tree containment question: does `net` display `tree`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub tree: UndirectedNet,
    pub net: UndirectedNet,
}

/// Cut-edges with no leaf endpoint, in canonical order.
pub fn non_trivial_cut_edges(net: &UndirectedNet) -> Vec<Edge> {
    non_trivial_given_cuts(net, &cut_edges(net))
}

fn non_trivial_given_cuts(net: &UndirectedNet, cuts: &BTreeSet<Edge>) -> Vec<Edge> {
    cuts.iter()
        .copied()
        .filter(|e| !net.is_leaf(e.lo()) && !net.is_leaf(e.hi()))
        .collect()
}

/// A network is simple when all its cut-edges are pendant.
pub fn is_simple(net: &UndirectedNet) -> bool {
    non_trivial_cut_edges(net).is_empty()
}

fn leaf_neighbor(net: &UndirectedNet, leaf: VertexId) -> VertexId {
    net.neighbors(leaf).next().expect("leaves have one neighbour")
}

fn require_same_labels(tree: &UndirectedNet, net: &UndirectedNet) -> Result<(), ContainError> {
    if tree.label_set() == net.label_set() {
        Ok(())
    } else {
        Err(ContainError::LabelSetMismatch)
    }
}
