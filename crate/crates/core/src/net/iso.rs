use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{NetError, RootedNet, UndirectedNet, VertexId};

/// Directed adjacency view; undirected graphs store each edge both ways.
struct View {
    out: BTreeMap<VertexId, BTreeSet<VertexId>>,
    inn: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl View {
    fn of_undirected(n: &UndirectedNet) -> Self {
        let out: BTreeMap<_, _> = n.vertices().map(|v| (v, n.neighbors(v).collect())).collect();
        View {
            inn: out.clone(),
            out,
        }
    }

    fn of_rooted(n: &RootedNet) -> Self {
        View {
            out: n.vertices().map(|v| (v, n.children(v).collect())).collect(),
            inn: n.vertices().map(|v| (v, n.parents(v).collect())).collect(),
        }
    }

    fn sig(&self, v: VertexId) -> (usize, usize) {
        (self.out[&v].len(), self.inn[&v].len())
    }

    fn touching(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.out[&v].iter().chain(self.inn[&v].iter()).copied()
    }
}

struct Search<'a> {
    a: &'a View,
    b: &'a View,
    order: Vec<VertexId>,
    parent: BTreeMap<VertexId, VertexId>,
    f: BTreeMap<VertexId, VertexId>,
    g: BTreeMap<VertexId, VertexId>,
}

impl Search<'_> {
    fn consistent(&self, x: VertexId, y: VertexId) -> bool {
        if self.a.sig(x) != self.b.sig(y) {
            return false;
        }
        for &z in &self.a.out[&x] {
            if let Some(&fz) = self.f.get(&z) {
                if !self.b.out[&y].contains(&fz) {
                    return false;
                }
            }
        }
        for &z in &self.a.inn[&x] {
            if let Some(&fz) = self.f.get(&z) {
                if !self.b.inn[&y].contains(&fz) {
                    return false;
                }
            }
        }
        for &w in &self.b.out[&y] {
            if let Some(&gw) = self.g.get(&w) {
                if !self.a.out[&x].contains(&gw) {
                    return false;
                }
            }
        }
        for &w in &self.b.inn[&y] {
            if let Some(&gw) = self.g.get(&w) {
                if !self.a.inn[&x].contains(&gw) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, i: usize) -> bool {
        let Some(&x) = self.order.get(i) else {
            return true;
        };
        if self.f.contains_key(&x) {
            return self.run(i + 1);
        }
        let candidates: Vec<VertexId> = match self.parent.get(&x) {
            Some(p) => self.b.touching(self.f[p]).collect(),
            None => self.b.out.keys().copied().collect(),
        };
        let mut tried = BTreeSet::new();
        for y in candidates {
            if !tried.insert(y) || self.g.contains_key(&y) || !self.consistent(x, y) {
                continue;
            }
            self.f.insert(x, y);
            self.g.insert(y, x);
            if self.run(i + 1) {
                return true;
            }
            self.f.remove(&x);
            self.g.remove(&y);
        }
        false
    }
}

/// Backtracking over a BFS order rooted at the pinned vertices. Pinned pairs
/// must already be mutually consistent.
fn search(a: &View, b: &View, pinned: Vec<(VertexId, VertexId)>) -> Option<BTreeMap<VertexId, VertexId>> {
    if a.out.len() != b.out.len() {
        return None;
    }
    let ea: usize = a.out.values().map(BTreeSet::len).sum();
    let eb: usize = b.out.values().map(BTreeSet::len).sum();
    if ea != eb {
        return None;
    }
    let mut degs_a: Vec<_> = a.out.keys().map(|&v| a.sig(v)).collect();
    let mut degs_b: Vec<_> = b.out.keys().map(|&v| b.sig(v)).collect();
    degs_a.sort();
    degs_b.sort();
    if degs_a != degs_b {
        return None;
    }
    let mut s = Search {
        a,
        b,
        order: Vec::new(),
        parent: BTreeMap::new(),
        f: BTreeMap::new(),
        g: BTreeMap::new(),
    };
    for &(x, y) in &pinned {
        if !s.consistent(x, y) || s.g.contains_key(&y) {
            return None;
        }
        s.f.insert(x, y);
        s.g.insert(y, x);
    }
    let mut seen: BTreeSet<VertexId> = pinned.iter().map(|p| p.0).collect();
    let mut queue: VecDeque<VertexId> = pinned.iter().map(|p| p.0).collect();
    let all: Vec<VertexId> = a.out.keys().copied().collect();
    for r in all {
        if seen.insert(r) {
            queue.push_back(r);
        }
        while let Some(v) = queue.pop_front() {
            s.order.push(v);
            for w in a.touching(v) {
                if seen.insert(w) {
                    s.parent.insert(w, v);
                    queue.push_back(w);
                }
            }
        }
    }
    s.run(0).then_some(s.f)
}

/// Isomorphism test fixing leaf labels.
pub fn labeled_isomorphic(a: &UndirectedNet, b: &UndirectedNet) -> Result<bool, NetError> {
    Ok(labeled_isomorphism(a, b)?.is_some())
}

/// A vertex bijection from `a` to `b` preserving edges and leaf labels, if
/// one exists.
pub fn labeled_isomorphism(
    a: &UndirectedNet,
    b: &UndirectedNet,
) -> Result<Option<BTreeMap<VertexId, VertexId>>, NetError> {
    if a.label_set() != b.label_set() {
        return Err(NetError::LabelSetMismatch);
    }
    let pinned = a
        .labels()
        .map(|(v, l)| (v, b.vertex_of(l).unwrap()))
        .collect();
    Ok(search(&View::of_undirected(a), &View::of_undirected(b), pinned))
}

/// Isomorphism test for rooted networks fixing labels, root and arc directions.
pub fn labeled_isomorphic_rooted(a: &RootedNet, b: &RootedNet) -> Result<bool, NetError> {
    if a.label_set() != b.label_set() {
        return Err(NetError::LabelSetMismatch);
    }
    let mut pinned: Vec<_> = a
        .labels()
        .map(|(v, l)| (v, b.vertex_of(l).unwrap()))
        .collect();
    match (a.root(), b.root()) {
        (Some(x), Some(y)) => pinned.push((x, y)),
        (None, None) => {}
        _ => return Ok(false),
    }
    Ok(search(&View::of_rooted(a), &View::of_rooted(b), pinned).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn relabel_ids(n: &UndirectedNet, shift: u32) -> UndirectedNet {
        let map = |v: VertexId| VertexId(1000 + shift * 7 + (v.0 * 13) % 997);
        let vs: Vec<_> = n.vertices().map(map).collect();
        let es: Vec<_> = n.edges().map(|e| (map(e.lo()), map(e.hi()))).collect();
        let ls: Vec<_> = n.labels().map(|(v, l)| (map(v), l.to_string())).collect();
        UndirectedNet::from_parts(&vs, &es, &ls).unwrap()
    }

    #[test]
    fn shuffled_ids_are_isomorphic() {
        for n in [quartet(), square(), two_squares(), embedding_example_net()] {
            let m = relabel_ids(&n, 3);
            assert!(labeled_isomorphic(&n, &m).unwrap());
            assert!(labeled_isomorphic(&m, &n).unwrap());
            assert!(labeled_isomorphic(&n, &n).unwrap());
        }
    }

    #[test]
    fn isomorphism_maps_edges_and_labels() {
        let n = embedding_example_net();
        let m = relabel_ids(&n, 5);
        let f = labeled_isomorphism(&n, &m).unwrap().unwrap();
        assert_eq!(f.len(), n.vertex_count());
        for e in n.edges() {
            assert!(m.adjacent(f[&e.lo()], f[&e.hi()]));
        }
        for (v, l) in n.labels() {
            assert_eq!(m.label(f[&v]), Some(l));
        }
        assert_eq!(labeled_isomorphism(&square(), &chorded_hexagon()).unwrap(), None);
    }

    #[test]
    fn different_cherries_are_not_isomorphic() {
        let ab = quartet();
        let ac = from_edges(
            &[(1, 5), (3, 5), (5, 6), (2, 6), (4, 6)],
            &[(1, "a"), (2, "b"), (3, "c"), (4, "d")],
        );
        assert!(!labeled_isomorphic(&ab, &ac).unwrap());
    }

    #[test]
    fn subdivide_suppress_round_trip() {
        let n = square();
        let e = n.edges().next().unwrap();
        let (m, v) = n.subdivide(e).unwrap();
        let back = m.suppress(v).unwrap();
        assert!(labeled_isomorphic(&n, &back).unwrap());
        assert_eq!(back.edges().count(), n.edge_count());
    }

    #[test]
    fn label_mismatch_is_an_error() {
        assert_eq!(labeled_isomorphic(&square(), &quartet()), Ok(false));
        assert!(labeled_isomorphic(&two_leaf(), &square()).is_err());
    }
}
