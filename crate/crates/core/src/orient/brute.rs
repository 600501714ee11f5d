use std::collections::BTreeMap;

use super::{apply_orientation, is_tree_child, OrientError, OrientationSpec};
use crate::net::{validate_unrooted, Edge, RootedNet, UndirectedNet, VertexId};

/// Search nodes allowed before giving up with `TooLarge`.
pub const DEFAULT_BRUTE_FORCE_BUDGET: usize = 5_000_000;

pub fn brute_force_tree_child_orientation(net: &UndirectedNet) -> Result<Option<RootedNet>, OrientError> {
    brute_force_tree_child_orientation_with_budget(net, DEFAULT_BRUTE_FORCE_BUDGET)
}

/// Exhaustive search for a tree-child orientation.
///
/// Root edges are tried in canonical order; within one root edge, free edges
/// are decided in canonical order, low-to-high before high-to-low. The first
/// orientation found is returned, so the answer is deterministic.
pub fn brute_force_tree_child_orientation_with_budget(
    net: &UndirectedNet,
    budget: usize,
) -> Result<Option<RootedNet>, OrientError> {
    let report = validate_unrooted(net);
    if !report.is_valid() {
        return Err(OrientError::Invalid(report));
    }
    let mut nodes = 0usize;
    for root_edge in net.edges() {
        let mut spec = OrientationSpec::new(net, root_edge)?;
        let mut search = Search::new(net, spec.root);
        let mut forced: Vec<(VertexId, VertexId)> = spec.direction.values().copied().collect();
        let mut free = Vec::new();
        for e in net.edges().filter(|&e| e != root_edge) {
            match (net.is_leaf(e.lo()), net.is_leaf(e.hi())) {
                (true, _) => forced.push((e.hi(), e.lo())),
                (_, true) => forced.push((e.lo(), e.hi())),
                _ => free.push(e),
            }
        }
        if !forced.iter().all(|&(t, h)| search.push(t, h)) {
            continue;
        }
        if search.run(&free, 0, &mut nodes, budget)? {
            for &(t, h) in &search.arcs {
                spec.set(search.ids[t], search.ids[h]);
            }
            let out = apply_orientation(net, &spec)?;
            assert!(is_tree_child(&out), "search accepted a non-tree-child orientation");
            return Ok(Some(out));
        }
    }
    Ok(None)
}

struct Search {
    ids: Vec<VertexId>,
    index: BTreeMap<VertexId, usize>,
    root: usize,
    leaf: Vec<bool>,
    children: Vec<Vec<usize>>,
    parents: Vec<Vec<usize>>,
    arcs: Vec<(usize, usize)>,
}

impl Search {
    fn new(net: &UndirectedNet, root: VertexId) -> Self {
        let mut ids: Vec<VertexId> = net.vertices().collect();
        ids.push(root);
        let index = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = ids.len();
        Self {
            leaf: ids.iter().map(|&v| net.is_leaf(v)).collect(),
            ids,
            index,
            root: n - 1,
            children: vec![Vec::new(); n],
            parents: vec![Vec::new(); n],
            arcs: Vec::new(),
        }
    }

    fn is_ret(&self, v: usize) -> bool {
        self.parents[v].len() >= 2
    }

    fn reaches(&self, from: usize, to: usize) -> bool {
        let mut seen = vec![false; self.ids.len()];
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            if v == to {
                return true;
            }
            if !std::mem::replace(&mut seen[v], true) {
                stack.extend(self.children[v].iter().copied());
            }
        }
        false
    }

    /// Adds the arc if it keeps degrees, acyclicity and the absence of stacks
    /// and sibling reticulations intact; all four only get worse as arcs are
    /// added, so rejecting early is sound.
    fn push(&mut self, tail: VertexId, head: VertexId) -> bool {
        let (t, h) = (self.index[&tail], self.index[&head]);
        if t == self.root && self.children[t].len() >= 2 || h == self.root {
            return false;
        }
        if self.leaf[t] || self.leaf[h] && !self.parents[h].is_empty() {
            return false;
        }
        if self.children[t].len() >= 2 || self.parents[h].len() >= 2 {
            return false;
        }
        if self.reaches(h, t) {
            return false;
        }
        self.children[t].push(h);
        self.parents[h].push(t);
        self.arcs.push((t, h));
        if self.violates_tree_child(h) || self.violates_tree_child(t) {
            self.pop();
            return false;
        }
        true
    }

    fn violates_tree_child(&self, v: usize) -> bool {
        if self.is_ret(v) && self.parents[v].iter().any(|&p| self.is_ret(p)) {
            return true;
        }
        if self.is_ret(v) && self.children[v].iter().any(|&c| self.is_ret(c)) {
            return true;
        }
        let sibling = |p: usize| self.children[p].iter().filter(|&&c| self.is_ret(c)).count() >= 2;
        self.parents[v].iter().any(|&p| sibling(p)) || sibling(v)
    }

    fn pop(&mut self) {
        let (t, h) = self.arcs.pop().unwrap();
        self.children[t].pop();
        self.parents[h].pop();
    }

    fn run(&mut self, free: &[Edge], k: usize, nodes: &mut usize, budget: usize) -> Result<bool, OrientError> {
        *nodes += 1;
        if *nodes > budget {
            return Err(OrientError::TooLarge(budget));
        }
        let Some(&e) = free.get(k) else {
            return Ok(true);
        };
        for (t, h) in [(e.lo(), e.hi()), (e.hi(), e.lo())] {
            if self.push(t, h) {
                if self.run(free, k + 1, nodes, budget)? {
                    return Ok(true);
                }
                self.pop();
            }
        }
        Ok(false)
    }
}
