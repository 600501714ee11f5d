use std::collections::{BTreeMap, BTreeSet};

use super::{Edge, NetError, VertexId};

/// Undirected leaf-labelled simple graph.
///
/// The type itself only guarantees simplicity and a bijective labelling; the
/// remaining phylogenetic-network invariants (connected, degrees 1 or 3,
/// labelled leaves) are checked by [`validate_unrooted`](super::validate_unrooted),
/// because reductions pass through intermediate states that violate them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UndirectedNet {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    labels: BTreeMap<VertexId, String>,
    by_label: BTreeMap<String, VertexId>,
    next_id: u32,
}

impl UndirectedNet {
    pub fn new() -> Self {
        Self {
            next_id: 1,
            ..Default::default()
        }
    }

    /// Allocates a fresh vertex id.
    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.next_id.max(1));
        self.next_id = id.0 + 1;
        self.adj.insert(id, BTreeSet::new());
        id
    }

    /// Inserts a vertex with a caller-chosen id. Returns false if it already exists.
    pub fn insert_vertex(&mut self, id: VertexId) -> bool {
        if self.adj.contains_key(&id) {
            return false;
        }
        self.adj.insert(id, BTreeSet::new());
        self.next_id = self.next_id.max(id.0 + 1);
        true
    }

    /// Adds a fresh vertex carrying `label`.
    pub fn add_leaf(&mut self, label: &str) -> Result<VertexId, NetError> {
        if self.by_label.contains_key(label) {
            return Err(NetError::DuplicateLabel(label.to_string()));
        }
        let v = self.add_vertex();
        self.set_label(v, label)?;
        Ok(v)
    }

    pub fn set_label(&mut self, v: VertexId, label: &str) -> Result<(), NetError> {
        if !self.adj.contains_key(&v) {
            return Err(NetError::UnknownVertex(v));
        }
        match self.by_label.get(label) {
            Some(&w) if w == v => return Ok(()),
            Some(_) => return Err(NetError::DuplicateLabel(label.to_string())),
            None => {}
        }
        if let Some(old) = self.labels.insert(v, label.to_string()) {
            self.by_label.remove(&old);
        }
        self.by_label.insert(label.to_string(), v);
        Ok(())
    }

    pub fn clear_label(&mut self, v: VertexId) {
        if let Some(old) = self.labels.remove(&v) {
            self.by_label.remove(&old);
        }
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<Edge, NetError> {
        if a == b {
            return Err(NetError::SelfLoop(a));
        }
        for v in [a, b] {
            if !self.adj.contains_key(&v) {
                return Err(NetError::UnknownVertex(v));
            }
        }
        if self.adj[&a].contains(&b) {
            return Err(NetError::WouldCreateParallelEdge(a, b));
        }
        self.adj.get_mut(&a).unwrap().insert(b);
        self.adj.get_mut(&b).unwrap().insert(a);
        Ok(Edge::new(a, b))
    }

    pub fn remove_edge(&mut self, e: Edge) -> Result<(), NetError> {
        let (a, b) = e.endpoints();
        if !self.has_edge(e) {
            return Err(NetError::UnknownEdge(e));
        }
        self.adj.get_mut(&a).unwrap().remove(&b);
        self.adj.get_mut(&b).unwrap().remove(&a);
        Ok(())
    }

    /// Removes `v`, its incident edges and its label.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<(), NetError> {
        let nbrs = self.adj.remove(&v).ok_or(NetError::UnknownVertex(v))?;
        for w in nbrs {
            self.adj.get_mut(&w).unwrap().remove(&v);
        }
        self.clear_label(v);
        Ok(())
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.adj.get(&e.lo()).is_some_and(|n| n.contains(&e.hi()))
    }

    pub fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.adj.get(&a).is_some_and(|n| n.contains(&b))
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.get(&v).into_iter().flat_map(|n| n.iter().copied())
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    /// Edges in canonical `(min, max)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .flat_map(|(&a, n)| n.range(a..).map(move |&b| Edge::new(a, b)))
    }

    pub fn incident_edges(&self, v: VertexId) -> impl Iterator<Item = Edge> + '_ {
        self.neighbors(v).map(move |w| Edge::new(v, w))
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn vertex_of(&self, label: &str) -> Option<VertexId> {
        self.by_label.get(label).copied()
    }

    /// `(vertex, label)` pairs ordered by vertex id.
    pub fn labels(&self) -> impl Iterator<Item = (VertexId, &str)> + '_ {
        self.labels.iter().map(|(&v, l)| (v, l.as_str()))
    }

    pub fn label_set(&self) -> BTreeSet<String> {
        self.by_label.keys().cloned().collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.labels.len()
    }

    /// Degree-one vertices.
    pub fn leaves(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj
            .iter()
            .filter(|(_, n)| n.len() == 1)
            .map(|(&v, _)| v)
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.degree(v) == 1
    }

    pub fn next_id(&self) -> VertexId {
        VertexId(self.next_id.max(1))
    }

    /// Cycle rank `|E| - (|V| - 1)`.
    pub fn reticulation_number(&self) -> usize {
        (self.edge_count() + 1).saturating_sub(self.vertex_count())
    }

    pub(crate) fn subdivide_mut(&mut self, e: Edge) -> Result<VertexId, NetError> {
        self.remove_edge(e)?;
        let v = self.add_vertex();
        self.add_edge(e.lo(), v)?;
        self.add_edge(v, e.hi())?;
        Ok(v)
    }

    pub(crate) fn suppress_mut(&mut self, v: VertexId) -> Result<Edge, NetError> {
        if !self.has_vertex(v) {
            return Err(NetError::UnknownVertex(v));
        }
        let nbrs: Vec<_> = self.neighbors(v).collect();
        let [a, b] = nbrs[..] else {
            return Err(NetError::NotDegreeTwo(v));
        };
        if self.adjacent(a, b) {
            return Err(NetError::WouldCreateParallelEdge(a, b));
        }
        self.remove_vertex(v)?;
        self.add_edge(a, b)
    }

    /// Replaces `e` by a path through a fresh vertex.
    pub fn subdivide(&self, e: Edge) -> Result<(Self, VertexId), NetError> {
        let mut out = self.clone();
        let v = out.subdivide_mut(e)?;
        Ok((out, v))
    }

    /// Deletes the degree-2 vertex `v` and joins its two neighbours.
    pub fn suppress(&self, v: VertexId) -> Result<Self, NetError> {
        let mut out = self.clone();
        out.suppress_mut(v)?;
        Ok(out)
    }
}
