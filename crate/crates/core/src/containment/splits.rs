use std::collections::BTreeSet;

use super::{non_trivial_cut_edges, ContainError, Instance};
use crate::net::structure::{components_with, split_of_known_cut};
use crate::net::{cut_edges, Edge, Split, UndirectedNet, VertexId};

/// Split of every tree edge, in canonical edge order.
pub fn tree_splits(tree: &UndirectedNet) -> Vec<(Edge, Split)> {
    tree.edges()
        .filter_map(|e| split_of_known_cut(tree, e).map(|s| (e, s)))
        .collect()
}

/// First incompatible pair `(network split, tree split)`, scanning network
/// cut-edges and then tree edges in canonical order.
pub fn conflicting_split(tree: &UndirectedNet, net: &UndirectedNet) -> Option<(Split, Split)> {
    let in_tree = tree_splits(tree);
    for e in cut_edges(net) {
        let Some(s) = split_of_known_cut(net, e) else { continue };
        if s.is_trivial() {
            continue;
        }
        if let Some((_, t)) = in_tree.iter().find(|(_, t)| !s.compatible(t)) {
            return Some((s, t.clone()));
        }
    }
    None
}

/// The two lowest labels `x1, x2, x3, ...` absent from `taken`.
pub fn fresh_label_pair(taken: &BTreeSet<String>) -> (String, String) {
    let mut fresh = (1..).map(|k| format!("x{k}")).filter(|l| !taken.contains(l));
    let a = fresh.next().expect("infinitely many candidates");
    let b = fresh.next().expect("infinitely many candidates");
    (a, b)
}

/// Cuts `net` at the cut-edge `e`: the part holding `e.lo()` gets a new leaf
/// `label_lo` on `e.lo()`, the other part a new leaf `label_hi` on `e.hi()`.
pub fn split_network_at(
    net: &UndirectedNet,
    e: Edge,
    label_lo: &str,
    label_hi: &str,
) -> Result<(UndirectedNet, UndirectedNet), ContainError> {
    if !net.has_edge(e) {
        return Err(ContainError::Net(crate::net::NetError::UnknownEdge(e)));
    }
    let mut cut = net.clone();
    cut.remove_edge(e)?;
    let comps = components_with(&cut, |_| true);
    let side = |v: VertexId| comps.iter().find(|c| c.contains(&v)).cloned().unwrap_or_default();
    let (lo_side, hi_side) = (side(e.lo()), side(e.hi()));
    if lo_side.contains(&e.hi()) {
        return Err(ContainError::NotCutEdge(e));
    }
    let part = |keep: &BTreeSet<VertexId>, anchor: VertexId, label: &str| -> Result<UndirectedNet, ContainError> {
        let mut out = cut.clone();
        let drop: Vec<VertexId> = out.vertices().filter(|v| !keep.contains(v)).collect();
        for v in drop {
            out.remove_vertex(v)?;
        }
        let leaf = out.add_leaf(label)?;
        out.add_edge(anchor, leaf)?;
        Ok(out)
    };
    Ok((part(&lo_side, e.lo(), label_lo)?, part(&hi_side, e.hi(), label_hi)?))
}

/// Branching on a non-trivial cut-edge of the network.
///
/// Both the network and the tree are cut at edges inducing the same split,
/// and the two stubs on each side receive the fresh leaves `x1` (low side of
/// `e`) and `x2`.
pub fn branch_on_cut_edge(
    tree: &UndirectedNet,
    net: &UndirectedNet,
    e: Edge,
) -> Result<(Instance, Instance), ContainError> {
    if !net.has_edge(e) {
        return Err(ContainError::Net(crate::net::NetError::UnknownEdge(e)));
    }
    if !cut_edges(net).contains(&e) {
        return Err(ContainError::NotCutEdge(e));
    }
    if net.is_leaf(e.lo()) || net.is_leaf(e.hi()) {
        return Err(ContainError::TrivialCutEdge(e));
    }
    let split = split_of_known_cut(net, e).ok_or(ContainError::NoMatchingTreeEdge(e))?;
    let low_labels = crate::net::structure::labels_beyond(net, e, e.lo());
    let (te, _) = tree_splits(tree)
        .into_iter()
        .find(|(_, s)| *s == split)
        .ok_or(ContainError::NoMatchingTreeEdge(e))?;
    // orient the tree edge so that its first end sits on the low side of e
    let (t_low, t_high) = if crate::net::structure::labels_beyond(tree, te, te.lo()) == low_labels {
        (te.lo(), te.hi())
    } else {
        (te.hi(), te.lo())
    };

    let (x1, x2) = fresh_label_pair(&net.label_set());
    let (u1, u2) = split_network_at(net, e, &x1, &x2)?;
    let (t1, t2) = if t_low == te.lo() {
        split_network_at(tree, te, &x1, &x2)?
    } else {
        let (a, b) = split_network_at(tree, te, &x2, &x1)?;
        (b, a)
    };
    debug_assert!(t1.vertex_of(&x1).is_some_and(|v| t1.adjacent(v, t_low)));
    debug_assert!(t2.vertex_of(&x2).is_some_and(|v| t2.adjacent(v, t_high)));
    Ok((Instance { tree: t1, net: u1 }, Instance { tree: t2, net: u2 }))
}

/// Repeatedly cuts at the lowest non-trivial cut-edge until every part is
/// simple. Fresh leaves are named as in [`branch_on_cut_edge`].
pub fn simple_parts(net: &UndirectedNet) -> Result<Vec<UndirectedNet>, ContainError> {
    let mut out = Vec::new();
    let mut stack = vec![net.clone()];
    while let Some(cur) = stack.pop() {
        match non_trivial_cut_edges(&cur).first() {
            None => out.push(cur),
            Some(&e) => {
                let (x1, x2) = fresh_label_pair(&cur.label_set());
                let (a, b) = split_network_at(&cur, e, &x1, &x2)?;
                stack.push(b);
                stack.push(a);
            }
        }
    }
    Ok(out)
}
