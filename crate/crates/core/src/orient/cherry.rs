use std::collections::BTreeSet;

use super::OrientError;
use crate::io::serialize_upn;
use crate::net::{cut_edges, Edge, UndirectedNet, VertexId};

/// Reduced networks the search may visit before reporting `BudgetExceeded`.
pub const DEFAULT_CHERRY_BUDGET: usize = 200_000;

/// Ordered leaf pairs whose reduction ends in a single vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CherryPickingSequence {
    pub pairs: Vec<(String, String)>,
}

enum Shape {
    /// Two remaining leaves joined directly, or two leaves on a common neighbour.
    Cherry,
    /// `x - u - v - y` with `{u, v}` on a cycle.
    Reticulated(Edge),
}

fn shape(net: &UndirectedNet, x: VertexId, y: VertexId) -> Option<Shape> {
    let nx = net.neighbors(x).next()?;
    let ny = net.neighbors(y).next()?;
    if nx == y || nx == ny {
        return Some(Shape::Cherry);
    }
    let central = Edge::new(nx, ny);
    if net.adjacent(nx, ny) && !cut_edges(net).contains(&central) {
        return Some(Shape::Reticulated(central));
    }
    if net.leaf_count() == 2 {
        return Some(Shape::Cherry);
    }
    None
}

/// Reduces the cherry or reticulated cherry `(x, y)`.
///
/// A cherry loses `x` (and, with at least three leaves, the neighbour of `x`
/// is suppressed). A reticulated cherry loses its central edge and both ends
/// of it are suppressed. With two leaves every pair is a cherry by definition,
/// but the reticulated reduction is preferred when it applies.
pub fn reduce_pair(net: &UndirectedNet, x: &str, y: &str) -> Result<UndirectedNet, OrientError> {
    let not_reducible = || OrientError::NotReducible(x.to_string(), y.to_string());
    let (Some(vx), Some(vy)) = (net.vertex_of(x), net.vertex_of(y)) else {
        return Err(not_reducible());
    };
    if vx == vy || !net.is_leaf(vx) || !net.is_leaf(vy) {
        return Err(not_reducible());
    }
    let mut out = net.clone();
    match shape(net, vx, vy).ok_or_else(not_reducible)? {
        Shape::Cherry => {
            let p = net.neighbors(vx).next().unwrap();
            let suppress = net.leaf_count() >= 3;
            out.remove_vertex(vx)?;
            if suppress {
                out.suppress_mut(p)?;
            }
        }
        Shape::Reticulated(central) => {
            out.remove_edge(central)?;
            out.suppress_mut(central.lo())?;
            out.suppress_mut(central.hi())?;
        }
    }
    Ok(out)
}

/// Applies the pairs in order and returns the final network.
pub fn replay(net: &UndirectedNet, seq: &CherryPickingSequence) -> Result<UndirectedNet, OrientError> {
    let mut cur = net.clone();
    for (x, y) in &seq.pairs {
        cur = reduce_pair(&cur, x, y)?;
    }
    Ok(cur)
}

pub fn cherry_picking_sequence(net: &UndirectedNet) -> Result<Option<CherryPickingSequence>, OrientError> {
    cherry_picking_sequence_with_budget(net, DEFAULT_CHERRY_BUDGET)
}

/// Exhaustive depth-first search over reductions, trying pairs in label
/// order and remembering networks already shown to be dead ends.
pub fn cherry_picking_sequence_with_budget(
    net: &UndirectedNet,
    budget: usize,
) -> Result<Option<CherryPickingSequence>, OrientError> {
    let mut dead = BTreeSet::new();
    let mut visited = 0usize;
    let mut pairs = Vec::new();
    if search(net, &mut pairs, &mut dead, &mut visited, budget)? {
        Ok(Some(CherryPickingSequence { pairs }))
    } else {
        Ok(None)
    }
}

fn search(
    net: &UndirectedNet,
    pairs: &mut Vec<(String, String)>,
    dead: &mut BTreeSet<String>,
    visited: &mut usize,
    budget: usize,
) -> Result<bool, OrientError> {
    if net.vertex_count() == 1 {
        return Ok(true);
    }
    let key = serialize_upn(net);
    if dead.contains(&key) {
        return Ok(false);
    }
    *visited += 1;
    if *visited > budget {
        return Err(OrientError::BudgetExceeded(budget));
    }
    let labels: Vec<String> = net.label_set().into_iter().collect();
    for x in &labels {
        for y in &labels {
            if x == y {
                continue;
            }
            let Ok(next) = reduce_pair(net, x, y) else { continue };
            pairs.push((x.clone(), y.clone()));
            if search(&next, pairs, dead, visited, budget)? {
                return Ok(true);
            }
            pairs.pop();
        }
    }
    dead.insert(key);
    Ok(false)
}
