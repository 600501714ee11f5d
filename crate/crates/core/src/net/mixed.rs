use std::collections::BTreeSet;

use super::{Edge, NetError, RootedNet, UndirectedNet, VertexId};

/// Partial orientation: some edges still undirected, others already arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedGraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeSet<Edge>,
    arcs: BTreeSet<(VertexId, VertexId)>,
    root: Option<VertexId>,
}

impl MixedGraph {
    /// All edges of `net` undirected, no root.
    pub fn from_undirected(net: &UndirectedNet) -> Self {
        Self {
            vertices: net.vertices().collect(),
            edges: net.edges().collect(),
            arcs: BTreeSet::new(),
            root: None,
        }
    }

    pub fn root(&self) -> Option<VertexId> {
        self.root
    }

    pub fn set_root(&mut self, v: VertexId) {
        self.vertices.insert(v);
        self.root = Some(v);
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    pub fn add_edge(&mut self, e: Edge) {
        self.edges.insert(e);
    }

    pub fn remove_edge(&mut self, e: Edge) -> bool {
        self.edges.remove(&e)
    }

    /// Turns the undirected edge `{tail, head}` into the arc `(tail, head)`.
    pub fn orient(&mut self, tail: VertexId, head: VertexId) -> Result<(), NetError> {
        let e = Edge::new(tail, head);
        if !self.edges.remove(&e) {
            return Err(NetError::UnknownEdge(e));
        }
        self.arcs.insert((tail, head));
        Ok(())
    }

    pub fn is_undirected(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn has_arc(&self, tail: VertexId, head: VertexId) -> bool {
        self.arcs.contains(&(tail, head))
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn is_fully_oriented(&self) -> bool {
        self.edges.is_empty()
    }

    /// Converts a fully oriented graph into a rooted net, copying labels from `labels_from`.
    pub fn into_rooted(self, labels_from: &UndirectedNet) -> Result<RootedNet, NetError> {
        if let Some(&e) = self.edges.iter().next() {
            return Err(NetError::UnknownEdge(e));
        }
        let mut out = RootedNet::new();
        for &v in &self.vertices {
            out.insert_vertex(v);
        }
        for &(t, h) in &self.arcs {
            out.add_arc(t, h)?;
        }
        for (v, l) in labels_from.labels() {
            out.set_label(v, l)?;
        }
        if let Some(r) = self.root {
            out.set_root(r)?;
        }
        Ok(out)
    }
}
