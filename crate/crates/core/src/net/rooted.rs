use std::collections::{BTreeMap, BTreeSet};

use super::{NetError, VertexId};

/// Rooted binary phylogenetic network stored as a leaf-labelled digraph.
///
/// As with [`UndirectedNet`](super::UndirectedNet), degree and acyclicity rules
/// are checked by [`validate_rooted`](super::validate_rooted) rather than on
/// every mutation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootedNet {
    children: BTreeMap<VertexId, BTreeSet<VertexId>>,
    parents: BTreeMap<VertexId, BTreeSet<VertexId>>,
    labels: BTreeMap<VertexId, String>,
    by_label: BTreeMap<String, VertexId>,
    root: Option<VertexId>,
    next_id: u32,
}

impl RootedNet {
    pub fn new() -> Self {
        Self {
            next_id: 1,
            ..Default::default()
        }
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.next_id.max(1));
        self.next_id = id.0 + 1;
        self.children.insert(id, BTreeSet::new());
        self.parents.insert(id, BTreeSet::new());
        id
    }

    pub fn insert_vertex(&mut self, id: VertexId) -> bool {
        if self.children.contains_key(&id) {
            return false;
        }
        self.children.insert(id, BTreeSet::new());
        self.parents.insert(id, BTreeSet::new());
        self.next_id = self.next_id.max(id.0 + 1);
        true
    }

    pub fn set_label(&mut self, v: VertexId, label: &str) -> Result<(), NetError> {
        if !self.has_vertex(v) {
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

    pub fn set_root(&mut self, v: VertexId) -> Result<(), NetError> {
        if !self.has_vertex(v) {
            return Err(NetError::UnknownVertex(v));
        }
        self.root = Some(v);
        Ok(())
    }

    pub fn root(&self) -> Option<VertexId> {
        self.root
    }

    pub fn add_arc(&mut self, tail: VertexId, head: VertexId) -> Result<(), NetError> {
        if tail == head {
            return Err(NetError::SelfLoop(tail));
        }
        for v in [tail, head] {
            if !self.has_vertex(v) {
                return Err(NetError::UnknownVertex(v));
            }
        }
        if self.children[&tail].contains(&head) || self.children[&head].contains(&tail) {
            return Err(NetError::WouldCreateParallelEdge(tail, head));
        }
        self.children.get_mut(&tail).unwrap().insert(head);
        self.parents.get_mut(&head).unwrap().insert(tail);
        Ok(())
    }

    pub fn remove_arc(&mut self, tail: VertexId, head: VertexId) -> Result<(), NetError> {
        if !self.has_arc(tail, head) {
            return Err(NetError::UnknownArc(tail, head));
        }
        self.children.get_mut(&tail).unwrap().remove(&head);
        self.parents.get_mut(&head).unwrap().remove(&tail);
        Ok(())
    }

    pub fn remove_vertex(&mut self, v: VertexId) -> Result<(), NetError> {
        let kids = self.children.remove(&v).ok_or(NetError::UnknownVertex(v))?;
        let pars = self.parents.remove(&v).unwrap_or_default();
        for c in kids {
            self.parents.get_mut(&c).unwrap().remove(&v);
        }
        for p in pars {
            self.children.get_mut(&p).unwrap().remove(&v);
        }
        if let Some(old) = self.labels.remove(&v) {
            self.by_label.remove(&old);
        }
        if self.root == Some(v) {
            self.root = None;
        }
        Ok(())
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.children.contains_key(&v)
    }

    pub fn has_arc(&self, tail: VertexId, head: VertexId) -> bool {
        self.children.get(&tail).is_some_and(|c| c.contains(&head))
    }

    pub fn children(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.children.get(&v).into_iter().flat_map(|c| c.iter().copied())
    }

    pub fn parents(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.parents.get(&v).into_iter().flat_map(|c| c.iter().copied())
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.parents.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.children.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.children.keys().copied()
    }

    /// Arcs ordered by `(tail, head)`.
    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.children
            .iter()
            .flat_map(|(&t, c)| c.iter().map(move |&h| (t, h)))
    }

    pub fn vertex_count(&self) -> usize {
        self.children.len()
    }

    pub fn arc_count(&self) -> usize {
        self.children.values().map(BTreeSet::len).sum()
    }

    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn vertex_of(&self, label: &str) -> Option<VertexId> {
        self.by_label.get(label).copied()
    }

    pub fn labels(&self) -> impl Iterator<Item = (VertexId, &str)> + '_ {
        self.labels.iter().map(|(&v, l)| (v, l.as_str()))
    }

    pub fn label_set(&self) -> BTreeSet<String> {
        self.by_label.keys().cloned().collect()
    }

    pub fn is_reticulation(&self, v: VertexId) -> bool {
        self.in_degree(v) == 2 && self.out_degree(v) == 1
    }

    pub fn is_tree_vertex(&self, v: VertexId) -> bool {
        self.in_degree(v) == 1 && self.out_degree(v) == 2
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.in_degree(v) == 1 && self.out_degree(v) == 0
    }

    pub fn reticulations(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices().filter(|&v| self.in_degree(v) >= 2)
    }

    /// Number of reticulations.
    pub fn reticulation_number(&self) -> usize {
        self.reticulations().count()
    }

    pub fn next_id(&self) -> VertexId {
        VertexId(self.next_id.max(1))
    }

    /// Replaces arc `(u, w)` by `(u, v)` and `(v, w)` through a fresh vertex `v`.
    pub fn subdivide(&self, tail: VertexId, head: VertexId) -> Result<(Self, VertexId), NetError> {
        let mut out = self.clone();
        out.remove_arc(tail, head)?;
        let v = out.add_vertex();
        out.add_arc(tail, v)?;
        out.add_arc(v, head)?;
        Ok((out, v))
    }

    /// Deletes a vertex with in-degree one and out-degree one, joining its
    /// parent to its child.
    pub fn suppress(&self, v: VertexId) -> Result<Self, NetError> {
        if !self.has_vertex(v) {
            return Err(NetError::UnknownVertex(v));
        }
        if self.in_degree(v) != 1 || self.out_degree(v) != 1 {
            return Err(NetError::NotDegreeTwo(v));
        }
        let p = self.parents(v).next().unwrap();
        let c = self.children(v).next().unwrap();
        if self.has_arc(p, c) || self.has_arc(c, p) {
            return Err(NetError::WouldCreateParallelEdge(p, c));
        }
        let mut out = self.clone();
        out.remove_vertex(v)?;
        out.add_arc(p, c)?;
        Ok(out)
    }

    /// Topological order of all vertices, or `None` if there is a directed cycle.
    pub fn topological_order(&self) -> Option<Vec<VertexId>> {
        let mut indeg: BTreeMap<VertexId, usize> =
            self.vertices().map(|v| (v, self.in_degree(v))).collect();
        let mut stack: Vec<VertexId> = indeg
            .iter()
            .filter(|(_, &d)| d == 0)
            .map(|(&v, _)| v)
            .rev()
            .collect();
        let mut order = Vec::with_capacity(self.vertex_count());
        while let Some(v) = stack.pop() {
            order.push(v);
            for c in self.children(v) {
                let d = indeg.get_mut(&c).unwrap();
                *d -= 1;
                if *d == 0 {
                    stack.push(c);
                }
            }
        }
        (order.len() == self.vertex_count()).then_some(order)
    }

    /// Some directed cycle, listed in arc order, if the digraph has one.
    pub fn find_cycle(&self) -> Option<Vec<VertexId>> {
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state: BTreeMap<VertexId, u8> = BTreeMap::new();
        for start in self.vertices() {
            if state.contains_key(&start) {
                continue;
            }
            let mut path: Vec<VertexId> = vec![start];
            let mut iters: Vec<Vec<VertexId>> = vec![self.children(start).collect()];
            state.insert(start, 1);
            while let Some(top) = iters.last_mut() {
                if let Some(next) = top.pop() {
                    match state.get(&next) {
                        Some(1) => {
                            let pos = path.iter().position(|&x| x == next).unwrap();
                            return Some(path[pos..].to_vec());
                        }
                        Some(_) => {}
                        None => {
                            state.insert(next, 1);
                            path.push(next);
                            iters.push(self.children(next).collect());
                        }
                    }
                } else {
                    let done = path.pop().unwrap();
                    state.insert(done, 2);
                    iters.pop();
                }
            }
        }
        None
    }
}
