use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{apply_orientation, is_tree_child, OrientError, OrientationSpec};
use crate::cuttable::is_q_cuttable;
use crate::net::structure::{blobs_given_cuts, cut_incident_blob_vertices};
use crate::net::{cut_edges, validate_unrooted, Blob, Edge, RootedNet, UndirectedNet, VertexId};

/// Non-cut edges whose endpoints both carry a cut-edge, i.e. the edges of
/// maximal chains with at least two vertices.
pub fn chain_edge_set(net: &UndirectedNet) -> BTreeSet<Edge> {
    let cuts = cut_edges(net);
    chain_edges_given_cuts(net, &cuts)
}

fn chain_edges_given_cuts(net: &UndirectedNet, cuts: &BTreeSet<Edge>) -> BTreeSet<Edge> {
    let inc = cut_incident_blob_vertices(net, cuts);
    net.edges()
        .filter(|e| !cuts.contains(e) && inc.contains(&e.lo()) && inc.contains(&e.hi()))
        .collect()
}

fn require_two_cuttable(net: &UndirectedNet) -> Result<(), OrientError> {
    let report = validate_unrooted(net);
    if !report.is_valid() {
        return Err(OrientError::Invalid(report));
    }
    let ok = is_q_cuttable(net, 2).map(|r| r.is_cuttable).unwrap_or(false);
    if ok {
        Ok(())
    } else {
        Err(OrientError::NotTwoCuttable)
    }
}

/// Edges of `s` left out of a spanning tree grown from the lowest leaf,
/// taking edges outside `s` whenever one reaches a new vertex.
///
/// Since the edges outside `s` form a forest in a 2-cuttable network, the tree
/// contains all of them and the returned set has exactly `r` edges.
pub fn choose_s_prime(net: &UndirectedNet, s: &BTreeSet<Edge>) -> Result<BTreeSet<Edge>, OrientError> {
    require_two_cuttable(net)?;
    let start = net
        .leaves()
        .min()
        .or_else(|| net.vertices().next())
        .ok_or(OrientError::NotTwoCuttable)?;
    let mut seen = BTreeSet::from([start]);
    let mut tree = BTreeSet::new();
    let mut frontier: VecDeque<(VertexId, VertexId)> = VecDeque::new();
    let push = |frontier: &mut VecDeque<_>, v: VertexId| {
        let mut heavy = Vec::new();
        for w in net.neighbors(v) {
            if s.contains(&Edge::new(v, w)) {
                heavy.push((v, w));
            } else {
                frontier.push_front((v, w));
            }
        }
        frontier.extend(heavy);
    };
    push(&mut frontier, start);
    while let Some((v, w)) = frontier.pop_front() {
        if seen.insert(w) {
            tree.insert(Edge::new(v, w));
            push(&mut frontier, w);
        }
    }
    let s_prime: BTreeSet<Edge> = net.edges().filter(|e| !tree.contains(e)).collect();
    if !s_prime.is_subset(s) {
        return Err(OrientError::NotTwoCuttable);
    }
    assert_eq!(s_prime.len(), net.reticulation_number(), "deleted edges must number r");
    assert_eq!(tree.len() + 1, net.vertex_count(), "tree must span");
    assert_separated(net, &s_prime);
    Ok(s_prime)
}

/// No two deleted edges share a vertex, and no two are joined by a single kept
/// blob edge.
fn assert_separated(net: &UndirectedNet, s_prime: &BTreeSet<Edge>) {
    let cuts = cut_edges(net);
    let deleted_at = |v: VertexId| -> Vec<Edge> {
        net.incident_edges(v).filter(|e| s_prime.contains(e)).collect()
    };
    for v in net.vertices() {
        assert!(deleted_at(v).len() <= 1, "two deleted edges meet at {v}");
    }
    for e in net.edges().filter(|e| !s_prime.contains(e) && !cuts.contains(e)) {
        let (u, v) = e.endpoints();
        let at_u = deleted_at(u);
        let at_v = deleted_at(v);
        if let (Some(f), Some(g)) = (at_u.first(), at_v.first()) {
            assert!(
                f.other(u) == g.other(v),
                "deleted edges {f} and {g} are joined by kept edge {e}"
            );
        }
    }
}

/// Tree-child orientation of a 2-cuttable network.
///
/// Deletes a set S′ of chain edges to leave a spanning tree, hangs the tree
/// from a root on the lowest cut-edge, then directs each S′ edge so that no
/// two reticulations share a parent.
pub fn tree_child_orient_2cuttable(net: &UndirectedNet) -> Result<RootedNet, OrientError> {
    require_two_cuttable(net)?;
    let cuts = cut_edges(net);
    let s = chain_edges_given_cuts(net, &cuts);
    let s_prime = choose_s_prime(net, &s)?;
    let root_edge = *cuts.first().ok_or(OrientError::NotTwoCuttable)?;
    let mut spec = OrientationSpec::new(net, root_edge)?;
    let rho = spec.root;

    let parent = hang_tree(net, &s_prime, root_edge, rho);
    for (&child, &p) in &parent {
        spec.set(p, child);
    }

    for blob in blobs_given_cuts(net, &cuts) {
        let deleted: Vec<Edge> = blob.edges.intersection(&s_prime).copied().collect();
        if deleted.is_empty() {
            continue;
        }
        let entry = blob_entry(&blob, &parent, &cuts, rho);
        for (tail, head) in orient_deleted_edges(net, &blob, &deleted, entry) {
            spec.set(tail, head);
        }
    }

    let out = apply_orientation(net, &spec).map_err(|e| OrientError::Internal(e.to_string()))?;
    if !is_tree_child(&out) {
        return Err(OrientError::Internal("result is not tree-child".into()));
    }
    Ok(out)
}

/// Parent of every non-root vertex when the tree `E - s_prime` hangs from a
/// root subdividing `root_edge`.
fn hang_tree(
    net: &UndirectedNet,
    s_prime: &BTreeSet<Edge>,
    root_edge: Edge,
    rho: VertexId,
) -> BTreeMap<VertexId, VertexId> {
    let mut parent = BTreeMap::new();
    let mut queue = VecDeque::new();
    for end in [root_edge.lo(), root_edge.hi()] {
        parent.insert(end, rho);
        queue.push_back(end);
    }
    while let Some(v) = queue.pop_front() {
        for w in net.neighbors(v) {
            let e = Edge::new(v, w);
            if e == root_edge || s_prime.contains(&e) || parent.contains_key(&w) {
                continue;
            }
            parent.insert(w, v);
            queue.push_back(w);
        }
    }
    parent
}

/// The blob vertex entered through a cut-edge (or directly from the root).
fn blob_entry(
    blob: &Blob,
    parent: &BTreeMap<VertexId, VertexId>,
    cuts: &BTreeSet<Edge>,
    rho: VertexId,
) -> VertexId {
    let entries: Vec<VertexId> = blob
        .vertices
        .iter()
        .copied()
        .filter(|&v| {
            let p = parent[&v];
            p == rho || cuts.contains(&Edge::new(p, v))
        })
        .collect();
    assert_eq!(entries.len(), 1, "a blob is entered exactly once");
    entries[0]
}

/// Constraint between two deleted edges joined by a 5-vertex path
/// `(s,t,u,v,w)`: `s -> t` iff `v -> w`. Stored as `forward(e) ^ forward(f) == parity`
/// where `forward` means low id to high id.
#[derive(Clone, Copy, Debug)]
struct Link {
    e: usize,
    f: usize,
    parity: bool,
}

impl Link {
    fn other(&self, i: usize) -> usize {
        if self.e == i {
            self.f
        } else {
            self.e
        }
    }
}

fn links_in_blob(net: &UndirectedNet, blob: &Blob, deleted: &[Edge]) -> Vec<Link> {
    let index: BTreeMap<Edge, usize> = deleted.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let nbrs = |v: VertexId| -> Vec<VertexId> {
        net.neighbors(v).filter(|&w| blob.edges.contains(&Edge::new(v, w))).collect()
    };
    let mut paths: BTreeSet<[VertexId; 5]> = BTreeSet::new();
    for &e in deleted {
        for (s, t) in [(e.lo(), e.hi()), (e.hi(), e.lo())] {
            for u in nbrs(t).into_iter().filter(|&u| u != s) {
                for v in nbrs(u).into_iter().filter(|&v| v != s && v != t) {
                    for w in nbrs(v).into_iter().filter(|&w| w != s && w != t && w != u) {
                        if index.contains_key(&Edge::new(v, w)) {
                            let p = [s, t, u, v, w];
                            let mut q = p;
                            q.reverse();
                            paths.insert(p.min(q));
                        }
                    }
                }
            }
        }
    }
    paths
        .into_iter()
        .map(|[s, t, _, v, w]| {
            let e = Edge::new(s, t);
            let f = Edge::new(v, w);
            Link {
                e: index[&e],
                f: index[&f],
                parity: (s == e.lo()) ^ (v == f.lo()),
            }
        })
        .collect()
}

/// Directions for the deleted edges of one blob.
///
/// Each component of the link multigraph is a path or a cycle. Paths satisfy
/// all their links; cycles are walked as a path from their start edge, which
/// leaves the closing link unconstrained. The start is the deleted edge at the
/// blob entry when the component has one, so that edge leaves the entry.
fn orient_deleted_edges(
    net: &UndirectedNet,
    blob: &Blob,
    deleted: &[Edge],
    entry: VertexId,
) -> Vec<(VertexId, VertexId)> {
    let links = links_in_blob(net, blob, deleted);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); deleted.len()];
    for (k, l) in links.iter().enumerate() {
        adj[l.e].push(k);
        adj[l.f].push(k);
    }
    debug_assert!(adj.iter().all(|a| a.len() <= 2), "link multigraph has degree above two");

    let mut forward: Vec<Option<bool>> = vec![None; deleted.len()];
    for seed in 0..deleted.len() {
        if forward[seed].is_some() {
            continue;
        }
        let comp = component(&adj, &links, seed);
        let comp_links: BTreeSet<usize> = comp.iter().flat_map(|&i| adj[i].iter().copied()).collect();
        let start = comp
            .iter()
            .copied()
            .find(|&i| deleted[i].contains(entry))
            .unwrap_or(seed);
        forward[start] = Some(true);
        if comp_links.len() < comp.len() {
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for &k in &adj[i] {
                    let j = links[k].other(i);
                    if forward[j].is_none() {
                        forward[j] = Some(forward[i].unwrap() ^ links[k].parity);
                        queue.push_back(j);
                    }
                }
            }
        } else {
            let mut cur = start;
            loop {
                let next = adj[cur]
                    .iter()
                    .map(|&k| (links[k].other(cur), k))
                    .filter(|&(j, _)| forward[j].is_none())
                    .min();
                let Some((j, k)) = next else { break };
                forward[j] = Some(forward[cur].unwrap() ^ links[k].parity);
                cur = j;
            }
        }
        let e = deleted[start];
        if e.contains(entry) && (e.lo() == entry) != forward[start].unwrap() {
            for &i in &comp {
                forward[i] = forward[i].map(|b| !b);
            }
        }
    }
    deleted
        .iter()
        .zip(forward)
        .map(|(e, f)| if f.unwrap() { (e.lo(), e.hi()) } else { (e.hi(), e.lo()) })
        .collect()
}

fn component(adj: &[Vec<usize>], links: &[Link], seed: usize) -> BTreeSet<usize> {
    let mut comp = BTreeSet::from([seed]);
    let mut stack = vec![seed];
    while let Some(i) = stack.pop() {
        for &k in &adj[i] {
            let j = links[k].other(i);
            if comp.insert(j) {
                stack.push(j);
            }
        }
    }
    comp
}
