use std::fmt;

use super::ContainError;
use crate::net::{UndirectedNet, VertexId};

/// A pendant subtree of a tree with three or four leaves.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PendantStructure {
    /// `((x,y),z)` hanging from the rest of the tree, with `x < y`.
    Triple { x: String, y: String, z: String },
    /// `((x,y),(w,z))` hanging from the rest of the tree, with `x < y`,
    /// `w < z` and `x < w`.
    Quad { w: String, x: String, y: String, z: String },
}

impl fmt::Display for PendantStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Triple { x, y, z } => write!(f, "(({x},{y}),{z})"),
            Self::Quad { w, x, y, z } => write!(f, "(({x},{y}),({w},{z}))"),
        }
    }
}

fn children(tree: &UndirectedNet, parent: VertexId, v: VertexId) -> Vec<VertexId> {
    tree.neighbors(v).filter(|&w| w != parent).collect()
}

fn label(tree: &UndirectedNet, v: VertexId) -> Option<String> {
    if tree.is_leaf(v) {
        tree.label(v).map(str::to_string)
    } else {
        None
    }
}

/// Leaf labels of a cherry hanging below `v`, sorted.
fn cherry_below(tree: &UndirectedNet, parent: VertexId, v: VertexId) -> Option<(String, String)> {
    let c = children(tree, parent, v);
    if c.len() != 2 {
        return None;
    }
    let (a, b) = (label(tree, c[0])?, label(tree, c[1])?);
    Some(if a < b { (a, b) } else { (b, a) })
}

/// Subtrees hanging below `v` when entered from `parent`.
fn pendant_at(tree: &UndirectedNet, parent: VertexId, v: VertexId) -> Option<PendantStructure> {
    let c = children(tree, parent, v);
    if c.len() != 2 {
        return None;
    }
    for (a, b) in [(c[0], c[1]), (c[1], c[0])] {
        if let (Some((x, y)), Some(z)) = (cherry_below(tree, v, a), label(tree, b)) {
            return Some(PendantStructure::Triple { x, y, z });
        }
    }
    let (p, q) = (cherry_below(tree, v, c[0])?, cherry_below(tree, v, c[1])?);
    let ((x, y), (w, z)) = if p < q { (p, q) } else { (q, p) };
    Some(PendantStructure::Quad { w, x, y, z })
}

fn all_pendants(tree: &UndirectedNet) -> Vec<PendantStructure> {
    let mut out: Vec<PendantStructure> = tree
        .edges()
        .flat_map(|e| [(e.lo(), e.hi()), (e.hi(), e.lo())])
        .filter_map(|(p, v)| pendant_at(tree, p, v))
        .collect();
    out.sort_by_key(sort_key);
    out.dedup();
    out
}

/// Leaves of the structure in sorted order, then the structure itself.
fn sort_key(p: &PendantStructure) -> (Vec<String>, PendantStructure) {
    let mut leaves = match p {
        PendantStructure::Triple { x, y, z } => vec![x.clone(), y.clone(), z.clone()],
        PendantStructure::Quad { w, x, y, z } => vec![w.clone(), x.clone(), y.clone(), z.clone()],
    };
    leaves.sort();
    (leaves, p.clone())
}

/// Every pendant `((x,y),z)` of the tree as `(x, y, z)`, ordered by sorted
/// leaf set.
pub fn pendant_triples(tree: &UndirectedNet) -> Vec<(String, String, String)> {
    all_pendants(tree)
        .into_iter()
        .filter_map(|p| match p {
            PendantStructure::Triple { x, y, z } => Some((x, y, z)),
            PendantStructure::Quad { .. } => None,
        })
        .collect()
}

/// Every pendant `((x,y),(w,z))` of the tree as `(w, x, y, z)`, ordered by
/// sorted leaf set.
pub fn pendant_quads(tree: &UndirectedNet) -> Vec<(String, String, String, String)> {
    all_pendants(tree)
        .into_iter()
        .filter_map(|p| match p {
            PendantStructure::Quad { w, x, y, z } => Some((w, x, y, z)),
            PendantStructure::Triple { .. } => None,
        })
        .collect()
}

/// A pendant triple if the tree has one, otherwise a pendant quad. One of the
/// two always exists once there are four leaves.
pub fn find_pendant_structures(tree: &UndirectedNet) -> Result<PendantStructure, ContainError> {
    let n = tree.leaf_count();
    if n < 4 {
        return Err(ContainError::TooFewLeaves(n));
    }
    if let Some((x, y, z)) = pendant_triples(tree).into_iter().next() {
        return Ok(PendantStructure::Triple { x, y, z });
    }
    if let Some((w, x, y, z)) = pendant_quads(tree).into_iter().next() {
        return Ok(PendantStructure::Quad { w, x, y, z });
    }
    Err(ContainError::Internal("tree with at least four leaves has no pendant triple or quad".into()))
}
