use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{Edge, NetError, Split, UndirectedNet, VertexId};

/// Maximal bridgeless subgraph with at least two vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blob {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<Edge>,
}

impl Blob {
    /// Cycle rank of the blob.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }
}

/// Path of same-blob vertices, each incident to a cut-edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub path_vertices: Vec<VertexId>,
    pub incident_cut_edges: Vec<Edge>,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.path_vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path_vertices.is_empty()
    }

    /// Consecutive vertex pairs as edges.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.path_vertices.windows(2).map(|w| Edge::new(w[0], w[1]))
    }
}

/// Connected components, each sorted, ordered by smallest vertex.
pub fn connected_components(net: &UndirectedNet) -> Vec<BTreeSet<VertexId>> {
    components_with(net, |_| true)
}

/// Components of the subgraph keeping only edges accepted by `keep`.
pub(crate) fn components_with(
    net: &UndirectedNet,
    keep: impl Fn(Edge) -> bool,
) -> Vec<BTreeSet<VertexId>> {
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    let mut out = Vec::new();
    for s in net.vertices() {
        if !seen.insert(s) {
            continue;
        }
        let mut comp = BTreeSet::from([s]);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for w in net.neighbors(v) {
                if keep(Edge::new(v, w)) && seen.insert(w) {
                    comp.insert(w);
                    stack.push(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Bridges, found by an iterative lowlink search.
pub fn cut_edges(net: &UndirectedNet) -> BTreeSet<Edge> {
    let mut disc: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut low: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut bridges = BTreeSet::new();
    let mut time = 0usize;
    for s in net.vertices() {
        if disc.contains_key(&s) {
            continue;
        }
        disc.insert(s, time);
        low.insert(s, time);
        time += 1;
        // (vertex, parent, remaining neighbours)
        let mut stack: Vec<(VertexId, Option<VertexId>, Vec<VertexId>)> =
            vec![(s, None, net.neighbors(s).collect())];
        while let Some((v, parent, rest)) = stack.last_mut() {
            let (v, parent) = (*v, *parent);
            if let Some(w) = rest.pop() {
                if Some(w) == parent {
                    continue;
                }
                if let Some(&dw) = disc.get(&w) {
                    let lv = low.get_mut(&v).unwrap();
                    *lv = (*lv).min(dw);
                } else {
                    disc.insert(w, time);
                    low.insert(w, time);
                    time += 1;
                    stack.push((w, Some(v), net.neighbors(w).collect()));
                }
            } else {
                stack.pop();
                if let Some(p) = parent {
                    let lv = low[&v];
                    let lp = low.get_mut(&p).unwrap();
                    *lp = (*lp).min(lv);
                    if lv > disc[&p] {
                        bridges.insert(Edge::new(p, v));
                    }
                }
            }
        }
    }
    bridges
}

/// Blobs ordered by smallest vertex.
pub fn blobs(net: &UndirectedNet) -> Vec<Blob> {
    let cuts = cut_edges(net);
    blobs_given_cuts(net, &cuts)
}

pub(crate) fn blobs_given_cuts(net: &UndirectedNet, cuts: &BTreeSet<Edge>) -> Vec<Blob> {
    components_with(net, |e| !cuts.contains(&e))
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|vertices| {
            let edges = vertices
                .iter()
                .flat_map(|&v| net.incident_edges(v))
                .filter(|e| !cuts.contains(e))
                .collect();
            Blob { vertices, edges }
        })
        .collect()
}

/// Blob vertices that are incident to at least one cut-edge.
pub(crate) fn cut_incident_blob_vertices(
    net: &UndirectedNet,
    cuts: &BTreeSet<Edge>,
) -> BTreeSet<VertexId> {
    net.vertices()
        .filter(|&v| {
            let mut has_cut = false;
            let mut has_blob = false;
            for e in net.incident_edges(v) {
                if cuts.contains(&e) {
                    has_cut = true;
                } else {
                    has_blob = true;
                }
            }
            has_cut && has_blob
        })
        .collect()
}

/// Components of the chain graph: cut-incident blob vertices joined by non-cut
/// edges. Each is a path or a cycle, returned in traversal order together with
/// a flag telling whether it closes into a cycle.
pub(crate) fn chain_components(
    net: &UndirectedNet,
    cuts: &BTreeSet<Edge>,
) -> Vec<(Vec<VertexId>, bool)> {
    let inc = cut_incident_blob_vertices(net, cuts);
    let hnbrs = |v: VertexId| -> Vec<VertexId> {
        net.neighbors(v)
            .filter(|&w| inc.contains(&w) && !cuts.contains(&Edge::new(v, w)))
            .collect()
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &s in &inc {
        if seen.contains(&s) {
            continue;
        }
        // collect the component first, then decide how to walk it
        let mut comp = BTreeSet::from([s]);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for w in hnbrs(v) {
                if comp.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.extend(comp.iter().copied());
        let ends: Vec<VertexId> = comp.iter().copied().filter(|&v| hnbrs(v).len() < 2).collect();
        let (start, cyclic) = match ends.first() {
            Some(&e) => (e, false),
            None => (*comp.first().unwrap(), true),
        };
        let mut walk = vec![start];
        let mut prev: Option<VertexId> = None;
        let mut cur = start;
        loop {
            let mut nb = hnbrs(cur);
            nb.sort();
            let next = nb.into_iter().find(|&w| Some(w) != prev && !walk.contains(&w));
            match next {
                Some(w) => {
                    walk.push(w);
                    prev = Some(cur);
                    cur = w;
                }
                None => break,
            }
        }
        debug_assert_eq!(walk.len(), comp.len());
        out.push((walk, cyclic));
    }
    out
}

fn cut_edge_at(net: &UndirectedNet, cuts: &BTreeSet<Edge>, v: VertexId) -> Edge {
    net.incident_edges(v)
        .find(|e| cuts.contains(e))
        .expect("chain vertex has a cut-edge")
}

/// Every maximal chain, once each. A fully cut-incident cycle is reported as
/// the path starting at its lowest vertex towards its lower-id neighbour.
pub fn maximal_chains(net: &UndirectedNet) -> Vec<Chain> {
    let cuts = cut_edges(net);
    maximal_chains_given_cuts(net, &cuts)
}

pub(crate) fn maximal_chains_given_cuts(net: &UndirectedNet, cuts: &BTreeSet<Edge>) -> Vec<Chain> {
    chain_components(net, cuts)
        .into_iter()
        .map(|(path, _)| Chain {
            incident_cut_edges: path.iter().map(|&v| cut_edge_at(net, cuts, v)).collect(),
            path_vertices: path,
        })
        .collect()
}

/// Vertices lying in some chain with at least `q` vertices.
pub fn chain_vertices(net: &UndirectedNet, q: usize) -> BTreeSet<VertexId> {
    let cuts = cut_edges(net);
    chain_components(net, &cuts)
        .into_iter()
        .filter(|(p, _)| p.len() >= q)
        .flat_map(|(p, _)| p)
        .collect()
}

/// Leaf labels on the side of `e` containing `side`, with `e` deleted.
pub(crate) fn labels_beyond(net: &UndirectedNet, e: Edge, side: VertexId) -> BTreeSet<String> {
    let mut seen = BTreeSet::from([side]);
    let mut stack = vec![side];
    let mut out = BTreeSet::new();
    while let Some(v) = stack.pop() {
        if let Some(l) = net.label(v) {
            out.insert(l.to_string());
        }
        for w in net.neighbors(v) {
            if Edge::new(v, w) == e {
                continue;
            }
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    out
}

/// Split induced by a cut-edge; `None` if one side carries no leaf.
pub fn split_of_cut_edge(net: &UndirectedNet, e: Edge) -> Result<Option<Split>, NetError> {
    if !net.has_edge(e) {
        return Err(NetError::UnknownEdge(e));
    }
    if !cut_edges(net).contains(&e) {
        return Err(NetError::NotCutEdge(e));
    }
    Ok(split_of_known_cut(net, e))
}

pub(crate) fn split_of_known_cut(net: &UndirectedNet, e: Edge) -> Option<Split> {
    let a = labels_beyond(net, e, e.lo());
    let b = labels_beyond(net, e, e.hi());
    Split::new(a, b)
}

/// Largest blob cycle rank; zero for trees.
pub fn level(net: &UndirectedNet) -> usize {
    blobs(net).iter().map(Blob::cycle_rank).max().unwrap_or(0)
}

/// Deletes the non-cut edge `e` and suppresses both endpoints.
pub fn eliminate_edge(net: &UndirectedNet, e: Edge) -> Result<UndirectedNet, NetError> {
    if !net.has_edge(e) {
        return Err(NetError::UnknownEdge(e));
    }
    if net.is_leaf(e.lo()) || net.is_leaf(e.hi()) {
        return Err(NetError::EndpointIsLeaf(e));
    }
    let mut out = net.clone();
    out.remove_edge(e)?;
    if !same_component(&out, e.lo(), e.hi()) {
        return Err(NetError::IsCutEdge(e));
    }
    out.suppress_mut(e.lo())?;
    out.suppress_mut(e.hi())?;
    Ok(out)
}

pub(crate) fn same_component(net: &UndirectedNet, a: VertexId, b: VertexId) -> bool {
    bfs_path(net, a, b, |_| true).is_some()
}

/// Shortest path from `a` to `b` using only vertices accepted by `allow`
/// (endpoints are always allowed); neighbours are explored in id order.
pub(crate) fn bfs_path(
    net: &UndirectedNet,
    a: VertexId,
    b: VertexId,
    allow: impl Fn(VertexId) -> bool,
) -> Option<Vec<VertexId>> {
    let mut prev: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut queue = VecDeque::from([a]);
    let mut seen = BTreeSet::from([a]);
    while let Some(v) = queue.pop_front() {
        if v == b {
            let mut path = vec![b];
            let mut cur = b;
            while cur != a {
                cur = prev[&cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for w in net.neighbors(v) {
            if (w == b || allow(w)) && seen.insert(w) {
                prev.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    None
}

/// True if the subgraph on `keep` (with all edges of `net` between kept
/// vertices, minus `drop_edges`) has no cycle.
pub(crate) fn is_forest_on(
    net: &UndirectedNet,
    keep: &BTreeSet<VertexId>,
    drop_edges: &BTreeSet<Edge>,
) -> bool {
    let edges = net
        .edges()
        .filter(|e| keep.contains(&e.lo()) && keep.contains(&e.hi()) && !drop_edges.contains(e))
        .count();
    let comps = components_with_on(net, keep, drop_edges);
    edges + comps == keep.len()
}

fn components_with_on(
    net: &UndirectedNet,
    keep: &BTreeSet<VertexId>,
    drop_edges: &BTreeSet<Edge>,
) -> usize {
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for &s in keep {
        if !seen.insert(s) {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for w in net.neighbors(v) {
                if keep.contains(&w) && !drop_edges.contains(&Edge::new(v, w)) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn brute_cut_edges(net: &UndirectedNet) -> BTreeSet<Edge> {
        net.edges()
            .filter(|&e| {
                let mut g = net.clone();
                g.remove_edge(e).unwrap();
                connected_components(&g).len() > connected_components(net).len()
            })
            .collect()
    }

    #[test]
    fn tree_edges_are_all_cut_edges() {
        let t = quartet();
        assert_eq!(cut_edges(&t), t.edges().collect());
        assert!(blobs(&t).is_empty());
        assert!(maximal_chains(&t).is_empty());
        assert_eq!(level(&t), 0);
    }

    #[test]
    fn square_structure() {
        let n = square();
        let cuts = cut_edges(&n);
        assert_eq!(cuts.len(), 4);
        assert!(cuts.iter().all(|e| n.is_leaf(e.lo()) || n.is_leaf(e.hi())));
        let bl = blobs(&n);
        assert_eq!(bl.len(), 1);
        assert_eq!(bl[0].vertices.len(), 4);
        assert_eq!(level(&n), 1);
        assert_eq!(n.reticulation_number(), 1);
        let ch = maximal_chains(&n);
        assert_eq!(ch.len(), 1);
        assert_eq!(ch[0].len(), 4);
        // lowest vertex first, then its lower neighbour
        let p = &ch[0].path_vertices;
        let lo = *bl[0].vertices.first().unwrap();
        assert_eq!(p[0], lo);
        let mut nb: Vec<_> = n.neighbors(lo).filter(|w| bl[0].vertices.contains(w)).collect();
        nb.sort();
        assert_eq!(p[1], nb[0]);
        for (v, e) in p.iter().zip(&ch[0].incident_cut_edges) {
            assert!(e.contains(*v));
            assert!(cuts.contains(e));
        }
    }

    #[test]
    fn two_squares_joined_by_cut_edge() {
        let n = two_squares();
        let bl = blobs(&n);
        assert_eq!(bl.len(), 2);
        assert_eq!(cut_edges(&n), brute_cut_edges(&n));
        let total: usize = bl.iter().map(|b| b.edges.len()).sum();
        assert_eq!(total + cut_edges(&n).len(), n.edge_count());
    }

    #[test]
    fn chain_of_two_in_theta() {
        // theta graph: only two adjacent vertices carry leaves
        let n = theta_two_leaves();
        let ch = maximal_chains(&n);
        assert_eq!(ch.len(), 1);
        assert_eq!(ch[0].len(), 2);
    }

    #[test]
    fn pendant_edge_split() {
        let n = square();
        let a = n.vertex_of("a").unwrap();
        let e = n.incident_edges(a).next().unwrap();
        let s = split_of_cut_edge(&n, e).unwrap().unwrap();
        assert_eq!(s.to_string(), "a|b,c,d");
        let blob_edge = blobs(&n)[0].edges.iter().next().copied().unwrap();
        assert_eq!(split_of_cut_edge(&n, blob_edge), Err(NetError::NotCutEdge(blob_edge)));
    }

    #[test]
    fn eliminate_chord_of_theta() {
        let n = chorded_hexagon();
        let r = n.reticulation_number();
        let chord = Edge::from((1, 4));
        let m = eliminate_edge(&n, chord).unwrap();
        assert_eq!(m.reticulation_number(), r - 1);
        assert!(crate::net::validate_unrooted(&m).is_valid());
        assert_eq!(m.label_set(), n.label_set());
        let leaf = n.vertex_of("a").unwrap();
        let pendant = n.incident_edges(leaf).next().unwrap();
        assert_eq!(eliminate_edge(&n, pendant), Err(NetError::EndpointIsLeaf(pendant)));
    }

    #[test]
    fn eliminate_cut_edge_between_blobs() {
        let n = two_squares();
        let bridge = cut_edges(&n)
            .into_iter()
            .find(|e| !n.is_leaf(e.lo()) && !n.is_leaf(e.hi()))
            .unwrap();
        assert_eq!(eliminate_edge(&n, bridge), Err(NetError::IsCutEdge(bridge)));
    }

    #[test]
    fn bridges_match_brute_force_on_fixtures() {
        for n in [quartet(), square(), two_squares(), theta_two_leaves(), chorded_hexagon()] {
            assert_eq!(cut_edges(&n), brute_cut_edges(&n));
        }
    }
}
