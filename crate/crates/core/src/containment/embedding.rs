use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{require_same_labels, ContainError};
use crate::net::{Edge, UndirectedNet, VertexId};

/// Image of a tree in a network: tree vertices go to network vertices and tree
/// edges to network paths.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Embedding {
    pub vertex_map: BTreeMap<VertexId, VertexId>,
    /// Path for each tree edge, listed from the image of `e.lo()` to the
    /// image of `e.hi()`. The reverse direction is also accepted.
    pub edge_map: BTreeMap<Edge, Vec<VertexId>>,
}

impl Embedding {
    /// The embedding of a network into itself.
    pub fn identity(net: &UndirectedNet) -> Self {
        Embedding {
            vertex_map: net.vertices().map(|v| (v, v)).collect(),
            edge_map: net.edges().map(|e| (e, vec![e.lo(), e.hi()])).collect(),
        }
    }

    /// Network edges covered by some path.
    pub fn used_edges(&self) -> BTreeSet<Edge> {
        self.edge_map
            .values()
            .flat_map(|p| p.windows(2).map(|w| Edge::new(w[0], w[1])))
            .collect()
    }
}

/// The five defining properties, in order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EmbeddingProperty {
    /// Every tree vertex has a network vertex as image.
    VertexImage,
    /// Leaves map to the leaf with the same label.
    LeafFixed,
    /// Distinct tree vertices have distinct images.
    Injective,
    /// Each edge image is a path between the images of its ends.
    PathEndpoints,
    /// Edge images are pairwise edge-disjoint.
    EdgeDisjoint,
}

impl EmbeddingProperty {
    /// 1-based position in the property list.
    pub fn index(self) -> usize {
        self as usize + 1
    }

    pub fn roman(self) -> &'static str {
        ["i", "ii", "iii", "iv", "v"][self as usize]
    }
}

impl fmt::Display for EmbeddingProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.roman())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingFailure {
    pub property: EmbeddingProperty,
    pub detail: String,
}

impl fmt::Display for EmbeddingFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "property {}: {}", self.property, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EmbeddingCheck {
    pub failures: Vec<EmbeddingFailure>,
}

impl EmbeddingCheck {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn violated(&self) -> BTreeSet<EmbeddingProperty> {
        self.failures.iter().map(|f| f.property).collect()
    }

    fn fail(&mut self, property: EmbeddingProperty, detail: String) {
        self.failures.push(EmbeddingFailure { property, detail });
    }
}

/// Checks all five embedding properties and reports every failure.
pub fn verify_embedding(
    tree: &UndirectedNet,
    net: &UndirectedNet,
    emb: &Embedding,
) -> Result<EmbeddingCheck, ContainError> {
    use EmbeddingProperty::*;
    require_same_labels(tree, net)?;
    let mut check = EmbeddingCheck::default();

    for t in tree.vertices() {
        match emb.vertex_map.get(&t) {
            None => check.fail(VertexImage, format!("tree vertex {t} has no image")),
            Some(&u) if !net.has_vertex(u) => {
                check.fail(VertexImage, format!("image {u} of {t} is not a network vertex"))
            }
            Some(&u) => {
                if let Some(l) = tree.label(t) {
                    if net.label(u) != Some(l) {
                        check.fail(LeafFixed, format!("leaf {l} maps to {u}"));
                    }
                }
            }
        }
    }

    let mut preimage: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for t in tree.vertices() {
        if let Some(&u) = emb.vertex_map.get(&t) {
            if let Some(prev) = preimage.insert(u, t) {
                check.fail(Injective, format!("{prev} and {t} both map to {u}"));
            }
        }
    }

    let mut owner: BTreeMap<Edge, Edge> = BTreeMap::new();
    for e in tree.edges() {
        let Some(path) = emb.edge_map.get(&e) else {
            check.fail(PathEndpoints, format!("tree edge {e} has no path"));
            continue;
        };
        if let Some(reason) = path_problem(net, emb, e, path) {
            check.fail(PathEndpoints, format!("image of {e}: {reason}"));
        }
        for w in path.windows(2) {
            let f = Edge::new(w[0], w[1]);
            if let Some(prev) = owner.insert(f, e) {
                if prev != e {
                    check.fail(EdgeDisjoint, format!("images of {prev} and {e} share {f}"));
                }
            }
        }
    }
    for e in emb.edge_map.keys().filter(|e| !tree.has_edge(**e)) {
        check.fail(PathEndpoints, format!("{e} is not a tree edge"));
    }
    Ok(check)
}

fn path_problem(net: &UndirectedNet, emb: &Embedding, e: Edge, path: &[VertexId]) -> Option<String> {
    if path.len() < 2 {
        return Some("fewer than two vertices".into());
    }
    if path.iter().collect::<BTreeSet<_>>().len() != path.len() {
        return Some("repeats a vertex".into());
    }
    if let Some(w) = path.windows(2).find(|w| !net.adjacent(w[0], w[1])) {
        return Some(format!("{} and {} are not adjacent", w[0], w[1]));
    }
    let (a, b) = (emb.vertex_map.get(&e.lo()), emb.vertex_map.get(&e.hi()));
    let ends = (Some(&path[0]), Some(&path[path.len() - 1]));
    if ends != (a, b) && ends != (b, a) {
        return Some("does not join the images of its ends".into());
    }
    None
}
