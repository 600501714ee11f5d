//! Orientations of unrooted networks: applying and undoing them, the
//! tree-child test, a constructive orientation for 2-cuttable networks and
//! exhaustive oracles.

mod brute;
mod cherry;
mod constructive;
mod tree_child;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::net::{
    validate_rooted, Edge, NetError, RootedNet, UndirectedNet, ValidationReport, VertexId,
};

pub use brute::{
    brute_force_tree_child_orientation, brute_force_tree_child_orientation_with_budget,
    DEFAULT_BRUTE_FORCE_BUDGET,
};
pub use cherry::{
    cherry_picking_sequence, cherry_picking_sequence_with_budget, reduce_pair, replay,
    CherryPickingSequence, DEFAULT_CHERRY_BUDGET,
};
pub use constructive::{choose_s_prime, chain_edge_set, tree_child_orient_2cuttable};
pub use tree_child::{has_sibling_reticulations, has_stack, is_tree_child, tree_child_by_definition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrientError {
    #[error("vertex {0} has an impossible in/out-degree pattern")]
    DegreeViolation(VertexId),
    #[error("orientation contains the directed cycle {0:?}")]
    CyclicOrientation(Vec<VertexId>),
    #[error("no direction given for edge {0}")]
    MissingDirection(Edge),
    #[error("direction ({0},{1}) does not match any edge")]
    StrayDirection(VertexId, VertexId),
    #[error("network is not 2-cuttable")]
    NotTwoCuttable,
    #[error("invalid network: {0}")]
    Invalid(ValidationReport),
    #[error("search exceeded its budget of {0} nodes")]
    TooLarge(usize),
    #[error("({0},{1}) is neither a cherry nor a reticulated cherry")]
    NotReducible(String, String),
    #[error("cherry-picking search exceeded its budget of {0} states")]
    BudgetExceeded(usize),
    #[error("constructed orientation failed verification: {0}")]
    Internal(String),
    #[error(transparent)]
    Net(#[from] NetError),
}

/// Where the root goes and which way every edge points.
///
/// `direction` is keyed by the edges of the subdivided graph: every edge of
/// the network except `root_edge`, plus the two halves at `root`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationSpec {
    pub root_edge: Edge,
    pub root: VertexId,
    pub direction: BTreeMap<Edge, (VertexId, VertexId)>,
}

impl OrientationSpec {
    /// Spec with the root placed on `root_edge` under the id `net.next_id()`
    /// and both halves already pointing away from it.
    pub fn new(net: &UndirectedNet, root_edge: Edge) -> Result<Self, OrientError> {
        if !net.has_edge(root_edge) {
            return Err(NetError::UnknownEdge(root_edge).into());
        }
        let root = net.next_id();
        let mut direction = BTreeMap::new();
        for end in [root_edge.lo(), root_edge.hi()] {
            direction.insert(Edge::new(root, end), (root, end));
        }
        Ok(Self { root_edge, root, direction })
    }

    /// Records the arc `(tail, head)`, replacing any earlier direction.
    pub fn set(&mut self, tail: VertexId, head: VertexId) {
        self.direction.insert(Edge::new(tail, head), (tail, head));
    }

    pub fn get(&self, e: Edge) -> Option<(VertexId, VertexId)> {
        self.direction.get(&e).copied()
    }
}

/// Subdivides `spec.root_edge` with the root and directs every edge.
///
/// Checks run in order: coverage, acyclicity, then per-vertex degree patterns.
pub fn apply_orientation(net: &UndirectedNet, spec: &OrientationSpec) -> Result<RootedNet, OrientError> {
    if !net.has_edge(spec.root_edge) {
        return Err(NetError::UnknownEdge(spec.root_edge).into());
    }
    if net.has_vertex(spec.root) {
        return Err(OrientError::Internal(format!("root id {} already in use", spec.root)));
    }
    let mut expected: BTreeSet<Edge> = net.edges().filter(|&e| e != spec.root_edge).collect();
    expected.insert(Edge::new(spec.root, spec.root_edge.lo()));
    expected.insert(Edge::new(spec.root, spec.root_edge.hi()));
    for (&e, &(t, h)) in &spec.direction {
        if !expected.contains(&e) || Edge::new(t, h) != e {
            return Err(OrientError::StrayDirection(t, h));
        }
    }
    if let Some(&e) = expected.iter().find(|e| !spec.direction.contains_key(e)) {
        return Err(OrientError::MissingDirection(e));
    }
    let mut out = RootedNet::new();
    for v in net.vertices() {
        out.insert_vertex(v);
    }
    out.insert_vertex(spec.root);
    for &(t, h) in spec.direction.values() {
        out.add_arc(t, h)?;
    }
    for (v, l) in net.labels() {
        out.set_label(v, l)?;
    }
    out.set_root(spec.root)?;
    if let Some(c) = out.find_cycle() {
        return Err(OrientError::CyclicOrientation(c));
    }
    for v in out.vertices() {
        let ok = match (out.in_degree(v), out.out_degree(v)) {
            (0, 2) => v == spec.root,
            (1, 0) => out.label(v).is_some(),
            (1, 2) | (2, 1) => true,
            _ => false,
        };
        if !ok {
            return Err(OrientError::DegreeViolation(v));
        }
    }
    let report = validate_rooted(&out);
    if !report.is_valid() {
        return Err(OrientError::Invalid(report));
    }
    Ok(out)
}

/// Forgets directions and suppresses the root.
pub fn underlying_unrooted(net: &RootedNet) -> Result<UndirectedNet, NetError> {
    let mut out = UndirectedNet::new();
    for v in net.vertices() {
        out.insert_vertex(v);
    }
    for (t, h) in net.arcs() {
        out.add_edge(t, h)?;
    }
    for (v, l) in net.labels() {
        out.set_label(v, l)?;
    }
    if let Some(r) = net.root() {
        if out.degree(r) == 2 {
            out.suppress_mut(r)?;
        }
    }
    Ok(out)
}
