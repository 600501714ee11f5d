use std::collections::BTreeSet;

use super::ContainError;
use crate::net::structure::bfs_path;
use crate::net::{cut_edges, Edge, UndirectedNet, VertexId};

/// No internal vertex of `path` touches a cut-edge that is not on `path`.
pub fn is_entangled(net: &UndirectedNet, path: &[VertexId]) -> bool {
    is_entangled_given_cuts(net, &cut_edges(net), path)
}

pub(crate) fn is_entangled_given_cuts(net: &UndirectedNet, cuts: &BTreeSet<Edge>, path: &[VertexId]) -> bool {
    if path.len() < 3 {
        return true;
    }
    (1..path.len() - 1).all(|i| {
        let v = path[i];
        net.incident_edges(v).filter(|e| cuts.contains(e)).all(|e| {
            let w = e.other(v);
            w == path[i - 1] || w == path[i + 1]
        })
    })
}

/// The entangled path between `u` and `v`, found by deleting every vertex
/// on a cut-edge that avoids both ends and searching what remains.
///
/// In a simple 3-cuttable network there is at most one such path. For `u == v`
/// the one-vertex path is returned.
pub fn entangled_path(net: &UndirectedNet, u: VertexId, v: VertexId) -> Option<Vec<VertexId>> {
    entangled_path_given_cuts(net, &cut_edges(net), u, v)
}

pub(crate) fn entangled_path_given_cuts(
    net: &UndirectedNet,
    cuts: &BTreeSet<Edge>,
    u: VertexId,
    v: VertexId,
) -> Option<Vec<VertexId>> {
    if !net.has_vertex(u) || !net.has_vertex(v) {
        return None;
    }
    if u == v {
        return Some(vec![u]);
    }
    let blocked: BTreeSet<VertexId> = cuts
        .iter()
        .filter(|e| !e.contains(u) && !e.contains(v))
        .flat_map(|e| [e.lo(), e.hi()])
        .collect();
    bfs_path(net, u, v, |w| !blocked.contains(&w))
}

/// Every simple path from `u` to `v`, in lexicographic order of vertex ids.
/// Stops with `BudgetExceeded` after `limit` search steps.
pub fn simple_paths(
    net: &UndirectedNet,
    u: VertexId,
    v: VertexId,
    limit: usize,
) -> Result<Vec<Vec<VertexId>>, ContainError> {
    let mut out = Vec::new();
    if !net.has_vertex(u) || !net.has_vertex(v) {
        return Ok(out);
    }
    let mut path = vec![u];
    let mut on_path = BTreeSet::from([u]);
    let mut steps = 0usize;
    extend(net, v, &mut path, &mut on_path, &mut out, &mut steps, limit)?;
    Ok(out)
}

fn extend(
    net: &UndirectedNet,
    target: VertexId,
    path: &mut Vec<VertexId>,
    on_path: &mut BTreeSet<VertexId>,
    out: &mut Vec<Vec<VertexId>>,
    steps: &mut usize,
    limit: usize,
) -> Result<(), ContainError> {
    *steps += 1;
    if *steps > limit {
        return Err(ContainError::BudgetExceeded(limit));
    }
    let last = *path.last().expect("paths are never empty");
    if last == target {
        out.push(path.clone());
        return Ok(());
    }
    let mut next: Vec<VertexId> = net.neighbors(last).filter(|w| !on_path.contains(w)).collect();
    next.sort();
    for w in next {
        path.push(w);
        on_path.insert(w);
        extend(net, target, path, on_path, out, steps, limit)?;
        on_path.remove(&w);
        path.pop();
    }
    Ok(())
}

/// Exhaustive counterpart of [`entangled_path`]: all simple paths filtered by
/// the entangled predicate.
pub fn entangled_paths_bruteforce(
    net: &UndirectedNet,
    u: VertexId,
    v: VertexId,
    limit: usize,
) -> Result<Vec<Vec<VertexId>>, ContainError> {
    let cuts = cut_edges(net);
    Ok(simple_paths(net, u, v, limit)?
        .into_iter()
        .filter(|p| is_entangled_given_cuts(net, &cuts, p))
        .collect())
}
