//! Recognition of q-cuttable networks.
//!
//! A network is q-cuttable if each of its cycles contains `q` consecutive
//! vertices that are all incident to cut-edges. Three independent recognizers
//! are provided so they can be tested against each other.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::net::structure::{chain_components, cut_incident_blob_vertices};
use crate::net::{cut_edges, Edge, UndirectedNet, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CutError {
    #[error("q must be at least 1, got {0}")]
    InvalidQ(usize),
    #[error("cycle space of dimension {rank} exceeds the enumeration budget of {limit}")]
    TooLarge { rank: usize, limit: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuttabilityReport {
    pub q: usize,
    pub is_cuttable: bool,
    /// Present iff `is_cuttable` is false: a chordless cycle without `q`
    /// consecutive cut-incident vertices.
    pub witness_cycle: Option<Vec<VertexId>>,
}

fn check_q(q: usize) -> Result<(), CutError> {
    if q == 0 {
        Err(CutError::InvalidQ(q))
    } else {
        Ok(())
    }
}

/// Recognizer that deletes every vertex of a length-`q` chain and tests for a forest.
pub fn is_q_cuttable(net: &UndirectedNet, q: usize) -> Result<CuttabilityReport, CutError> {
    check_q(q)?;
    let cuts = cut_edges(net);
    let removed: BTreeSet<VertexId> = chain_components(net, &cuts)
        .into_iter()
        .filter(|(p, _)| p.len() >= q)
        .flat_map(|(p, _)| p)
        .collect();
    let keep: BTreeSet<VertexId> = net.vertices().filter(|v| !removed.contains(v)).collect();
    let witness = find_cycle_within(net, &keep).map(|c| chordless(net, c));
    Ok(CuttabilityReport {
        q,
        is_cuttable: witness.is_none(),
        witness_cycle: witness,
    })
}

/// Some cycle of the subgraph induced by `keep`.
fn find_cycle_within(net: &UndirectedNet, keep: &BTreeSet<VertexId>) -> Option<Vec<VertexId>> {
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut depth: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &s in keep {
        if depth.contains_key(&s) {
            continue;
        }
        depth.insert(s, 0);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for w in net.neighbors(v) {
                if !keep.contains(&w) || parent.get(&v) == Some(&w) {
                    continue;
                }
                if depth.contains_key(&w) {
                    // non-tree edge closes a cycle through the lowest common ancestor
                    let mut a = v;
                    let mut b = w;
                    let mut left = vec![a];
                    let mut right = vec![b];
                    while a != b {
                        if depth[&a] >= depth[&b] {
                            a = parent[&a];
                            left.push(a);
                        } else {
                            b = parent[&b];
                            right.push(b);
                        }
                    }
                    right.pop();
                    right.reverse();
                    left.extend(right);
                    return Some(left);
                }
                depth.insert(w, depth[&v] + 1);
                parent.insert(w, v);
                stack.push(w);
            }
        }
    }
    None
}

/// Shortens a cycle along chords until none is left. Every chord joins two
/// cycle vertices, so the shortcut stays inside the same vertex set.
fn chordless(net: &UndirectedNet, mut cycle: Vec<VertexId>) -> Vec<VertexId> {
    'outer: loop {
        let k = cycle.len();
        for i in 0..k {
            for j in i + 2..k {
                if i == 0 && j == k - 1 {
                    continue;
                }
                if net.adjacent(cycle[i], cycle[j]) {
                    // keep the shorter side
                    let inner = j - i + 1;
                    let outer = k - (j - i) + 1;
                    cycle = if inner <= outer {
                        cycle[i..=j].to_vec()
                    } else {
                        let mut c = cycle[j..].to_vec();
                        c.extend_from_slice(&cycle[..=i]);
                        c
                    };
                    continue 'outer;
                }
            }
        }
        return rotate_canonical(cycle);
    }
}

/// Starts at the lowest vertex and heads towards its lower cycle neighbour.
fn rotate_canonical(mut c: Vec<VertexId>) -> Vec<VertexId> {
    let (i, _) = c.iter().enumerate().min_by_key(|(_, v)| **v).unwrap();
    c.rotate_left(i);
    if c.len() > 2 && c[c.len() - 1] < c[1] {
        c[1..].reverse();
    }
    c
}

/// Recognizer that deletes one edge from each maximal chain of length at
/// least `q` and tests for a forest. A single-vertex chain has no edge of its
/// own, so its lowest non-cut incident edge is deleted instead; any cycle
/// through that vertex uses both of its non-cut edges.
pub fn is_q_cuttable_via_chain_deletion(net: &UndirectedNet, q: usize) -> Result<bool, CutError> {
    check_q(q)?;
    let cuts = cut_edges(net);
    let mut dropped: BTreeSet<Edge> = BTreeSet::new();
    for (path, _) in chain_components(net, &cuts) {
        if path.len() < q {
            continue;
        }
        let e = if path.len() == 1 {
            net.incident_edges(path[0])
                .filter(|e| !cuts.contains(e))
                .min()
                .expect("chain vertex lies in a blob")
        } else {
            path.windows(2)
                .map(|w| Edge::new(w[0], w[1]))
                .min()
                .unwrap()
        };
        dropped.insert(e);
    }
    let all: BTreeSet<VertexId> = net.vertices().collect();
    Ok(crate::net::structure::is_forest_on(net, &all, &dropped))
}

/// Default limit on the cycle-space dimension for brute-force enumeration.
pub const DEFAULT_CYCLE_RANK_LIMIT: usize = 16;

/// Every cycle of `net`, each as a vertex sequence, by enumerating the
/// cycle space. Errors if the reticulation number exceeds `rank_limit`.
pub fn enumerate_cycles(
    net: &UndirectedNet,
    rank_limit: usize,
) -> Result<Vec<Vec<VertexId>>, CutError> {
    let rank = net.reticulation_number();
    if rank > rank_limit {
        return Err(CutError::TooLarge {
            rank,
            limit: rank_limit,
        });
    }
    // spanning forest by DFS; non-tree edges generate fundamental cycles
    let mut parent: BTreeMap<VertexId, Option<VertexId>> = BTreeMap::new();
    let mut tree: BTreeSet<Edge> = BTreeSet::new();
    for s in net.vertices() {
        if parent.contains_key(&s) {
            continue;
        }
        parent.insert(s, None);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for w in net.neighbors(v) {
                if let std::collections::btree_map::Entry::Vacant(e) = parent.entry(w) {
                    e.insert(Some(v));
                    tree.insert(Edge::new(v, w));
                    stack.push(w);
                }
            }
        }
    }
    let path_to_root = |mut v: VertexId| {
        let mut p = vec![v];
        while let Some(Some(u)) = parent.get(&v) {
            v = *u;
            p.push(v);
        }
        p
    };
    let fundamentals: Vec<BTreeSet<Edge>> = net
        .edges()
        .filter(|e| !tree.contains(e))
        .map(|e| {
            let mut set = BTreeSet::from([e]);
            let pa = path_to_root(e.lo());
            let pb = path_to_root(e.hi());
            for p in [pa, pb] {
                for w in p.windows(2) {
                    let f = Edge::new(w[0], w[1]);
                    if !set.remove(&f) {
                        set.insert(f);
                    }
                }
            }
            set
        })
        .collect();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << fundamentals.len()) {
        let mut sum: BTreeSet<Edge> = BTreeSet::new();
        for (i, f) in fundamentals.iter().enumerate() {
            if mask >> i & 1 == 1 {
                sum = sum.symmetric_difference(f).copied().collect();
            }
        }
        if let Some(c) = as_single_cycle(&sum) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Orders an edge set as a cycle if it is one.
fn as_single_cycle(edges: &BTreeSet<Edge>) -> Option<Vec<VertexId>> {
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for e in edges {
        adj.entry(e.lo()).or_default().push(e.hi());
        adj.entry(e.hi()).or_default().push(e.lo());
    }
    if adj.is_empty() || adj.values().any(|n| n.len() != 2) {
        return None;
    }
    let start = *adj.keys().next().unwrap();
    let mut cycle = vec![start];
    let mut prev = start;
    let mut cur = adj[&start][0];
    while cur != start {
        cycle.push(cur);
        let n = &adj[&cur];
        let next = if n[0] == prev { n[1] } else { n[0] };
        prev = cur;
        cur = next;
    }
    (cycle.len() == adj.len()).then_some(cycle)
}

/// True if `cycle` has `q` cyclically consecutive vertices in `marked`.
pub fn cycle_has_marked_run(cycle: &[VertexId], marked: &BTreeSet<VertexId>, q: usize) -> bool {
    let k = cycle.len();
    if q > k {
        return false;
    }
    if cycle.iter().all(|v| marked.contains(v)) {
        return true;
    }
    let start = cycle.iter().position(|v| !marked.contains(v)).unwrap();
    let mut run = 0;
    for i in 1..=k {
        if marked.contains(&cycle[(start + i) % k]) {
            run += 1;
            if run >= q {
                return true;
            }
        } else {
            run = 0;
        }
    }
    false
}

/// Literal check over all cycles, for use as an oracle.
pub fn is_q_cuttable_bruteforce(net: &UndirectedNet, q: usize) -> Result<bool, CutError> {
    is_q_cuttable_bruteforce_with_limit(net, q, DEFAULT_CYCLE_RANK_LIMIT)
}

pub fn is_q_cuttable_bruteforce_with_limit(
    net: &UndirectedNet,
    q: usize,
    rank_limit: usize,
) -> Result<bool, CutError> {
    check_q(q)?;
    let cuts = cut_edges(net);
    let marked = cut_incident_blob_vertices(net, &cuts);
    Ok(enumerate_cycles(net, rank_limit)?
        .iter()
        .all(|c| cycle_has_marked_run(c, &marked, q)))
}

/// Largest `q` for which `net` is q-cuttable; `None` for trees, `Some(0)`
/// when not even 1-cuttable.
pub fn max_cuttability(net: &UndirectedNet) -> Option<usize> {
    if net.reticulation_number() == 0 {
        return None;
    }
    let cuts = cut_edges(net);
    let longest = chain_components(net, &cuts)
        .iter()
        .map(|(p, _)| p.len())
        .max()
        .unwrap_or(0);
    let mut best = 0;
    for q in 1..=longest {
        if is_q_cuttable(net, q).expect("q >= 1").is_cuttable {
            best = q;
        } else {
            break;
        }
    }
    Some(best)
}
