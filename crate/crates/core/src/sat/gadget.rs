use std::collections::BTreeMap;

use super::{validate_2balanced, CnfInstance, SatError};
use crate::net::{validate_unrooted, UndirectedNet, VertexId};

/// Edges of the connection gadget: a 4-cycle `u v w2 w` with terminal `s` on
/// `u`, terminal `t` on `v` and leaves `l`, `l2` on `w`, `w2`.
pub const CONNECTION_EDGES: [(&str, &str); 8] = [
    ("s", "u"),
    ("u", "v"),
    ("u", "w"),
    ("w", "w2"),
    ("w2", "v"),
    ("v", "t"),
    ("w", "l"),
    ("w2", "l2"),
];

/// Edges of the reticulation gadget: triangle `u v v2` below `s`, then
/// `v - w`, `v2 - w2` meeting again at `r`, which leads to `t`.
pub const RETICULATION_EDGES: [(&str, &str); 11] = [
    ("s", "u"),
    ("u", "v"),
    ("u", "v2"),
    ("v", "v2"),
    ("v", "w"),
    ("v2", "w2"),
    ("w", "l"),
    ("w2", "l2"),
    ("w", "r"),
    ("w2", "r"),
    ("r", "t"),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GadgetKind {
    Connection,
    Reticulation,
}

impl GadgetKind {
    pub fn edges(self) -> &'static [(&'static str, &'static str)] {
        match self {
            GadgetKind::Connection => &CONNECTION_EDGES,
            GadgetKind::Reticulation => &RETICULATION_EDGES,
        }
    }

    /// Vertex names in first-appearance order of the edge list.
    pub fn names(self) -> Vec<&'static str> {
        let mut out: Vec<&str> = Vec::new();
        for &(a, b) in self.edges() {
            for x in [a, b] {
                if !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        out
    }

    pub fn code(self) -> char {
        match self {
            GadgetKind::Connection => 'C',
            GadgetKind::Reticulation => 'R',
        }
    }
}

/// A standalone gadget. Terminals `s` and `t` have degree one and no label;
/// `l` and `l2` are labeled leaves.
#[derive(Clone, Debug)]
pub struct GadgetFragment {
    pub net: UndirectedNet,
    pub vertices: BTreeMap<String, VertexId>,
}

impl GadgetFragment {
    pub fn s(&self) -> VertexId {
        self.vertices["s"]
    }

    pub fn t(&self) -> VertexId {
        self.vertices["t"]
    }
}

fn fragment(kind: GadgetKind) -> GadgetFragment {
    let mut net = UndirectedNet::new();
    let mut vertices = BTreeMap::new();
    for name in kind.names() {
        vertices.insert(name.to_string(), net.add_vertex());
    }
    for &(a, b) in kind.edges() {
        net.add_edge(vertices[a], vertices[b]).expect("gadget edges are simple");
    }
    for l in ["l", "l2"] {
        net.set_label(vertices[l], l).expect("fresh labels");
    }
    GadgetFragment { net, vertices }
}

pub fn connection_gadget() -> GadgetFragment {
    fragment(GadgetKind::Connection)
}

pub fn reticulation_gadget() -> GadgetFragment {
    fragment(GadgetKind::Reticulation)
}

/// One gadget copy inside the reduction network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetCopy {
    pub kind: GadgetKind,
    /// `Rr` for the root gadget, `R<k>`, `C<j>.<k>` for clause gadgets and
    /// `G<i>.<h>` for variable gadgets; all indices 1-based.
    pub role: String,
    pub vertices: BTreeMap<String, VertexId>,
}

impl GadgetCopy {
    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertices.get(name).copied()
    }
}

/// Where every gadget and every identified vertex of the reduction network lives.
///
/// `named` holds the shared vertices: `p<k>` on the root path, `z<j>` joining a
/// clause's gadgets, `lit<j>.<k>` for literal vertices and `r<i>.<h>` for the
/// vertices where variable gadgets meet reticulation gadgets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GadgetMap {
    pub n: usize,
    pub m: usize,
    pub gadgets: Vec<GadgetCopy>,
    pub named: BTreeMap<String, VertexId>,
}

impl GadgetMap {
    pub fn gadget(&self, role: &str) -> Option<&GadgetCopy> {
        self.gadgets.iter().find(|g| g.role == role)
    }

    pub fn vertex(&self, role: &str, name: &str) -> Option<VertexId> {
        self.gadget(role).and_then(|g| g.vertex(name))
    }

    pub fn named(&self, key: &str) -> Option<VertexId> {
        self.named.get(key).copied()
    }

    pub fn count(&self, kind: GadgetKind) -> usize {
        self.gadgets.iter().filter(|g| g.kind == kind).count()
    }

    fn must(&self, role: &str, name: &str) -> VertexId {
        self.vertex(role, name)
            .unwrap_or_else(|| panic!("gadget map lacks {role}.{name}"))
    }

    fn must_named(&self, key: &str) -> VertexId {
        self.named(key).unwrap_or_else(|| panic!("gadget map lacks {key}"))
    }
}

pub(crate) fn clause_role(j: usize, k: usize) -> String {
    format!("C{j}.{k}")
}

pub(crate) fn variable_role(i: usize, h: usize) -> String {
    format!("G{i}.{h}")
}

pub(crate) fn retic_role(k: usize) -> String {
    format!("R{k}")
}

pub(crate) const ROOT_ROLE: &str = "Rr";
pub(crate) const ROOT_LEAF: &str = "Rr.a";
pub(crate) const ROOT_LEAF2: &str = "Rr.b";

/// Leaf hanging off the clause-side terminal of `C<j>.<k>`.
pub(crate) fn clause_leaf(j: usize, k: usize) -> String {
    format!("c{j}.{k}")
}

struct Builder {
    net: UndirectedNet,
    map: GadgetMap,
}

impl Builder {
    fn fresh(&mut self) -> VertexId {
        self.net.add_vertex()
    }

    fn leaf(&mut self, label: &str) -> VertexId {
        self.net.add_leaf(label).expect("labels are unique by construction")
    }

    fn edge(&mut self, a: VertexId, b: VertexId) {
        self.net.add_edge(a, b).expect("construction never repeats an edge");
    }

    fn name(&mut self, key: String, v: VertexId) {
        self.map.named.insert(key, v);
    }

    fn gadget(&mut self, kind: GadgetKind, role: String, s: VertexId, t: VertexId) {
        let mut vertices = BTreeMap::from([("s".to_string(), s), ("t".to_string(), t)]);
        for name in kind.names() {
            if vertices.contains_key(name) {
                continue;
            }
            let v = match name {
                "l" | "l2" => self.leaf(&format!("{role}.{name}")),
                _ => self.fresh(),
            };
            vertices.insert(name.to_string(), v);
        }
        for &(a, b) in kind.edges() {
            self.edge(vertices[a], vertices[b]);
        }
        self.map.gadgets.push(GadgetCopy { kind, role, vertices });
    }
}

/// Builds the reduction network for a 2-balanced instance.
///
/// Variable `i` gets reticulation gadgets `R<2i-1>` and `R<2i>`, whose
/// t-terminals are `r<i>.1` and `r<i>.2`. The s-terminal of `G<i>.<h>` is the
/// literal vertex of the h-th unnegated occurrence of `x_i` in clause order,
/// and its t-terminal that of the h-th negated occurrence.
pub fn build_u_phi(cnf: &CnfInstance) -> Result<(UndirectedNet, GadgetMap), SatError> {
    let report = validate_2balanced(cnf);
    if !report.is_valid() {
        return Err(SatError::NotTwoBalanced(report));
    }
    let (n, m) = (cnf.num_vars(), cnf.num_clauses());
    let n_r = 1 + 2 * n;
    let mut b = Builder {
        net: UndirectedNet::new(),
        map: GadgetMap { n, m, ..GadgetMap::default() },
    };

    // root gadget: path p_1 .. p_{n_r - 2}
    let path: Vec<VertexId> = (0..n_r - 2).map(|_| b.fresh()).collect();
    for (k, &p) in path.iter().enumerate() {
        b.name(format!("p{}", k + 1), p);
    }
    for w in path.windows(2) {
        b.edge(w[0], w[1]);
    }
    let mut r_vertices = Vec::new();
    for i in 1..=n {
        for h in 1..=2 {
            let v = b.fresh();
            b.name(format!("r{i}.{h}"), v);
            r_vertices.push(v);
        }
    }
    let root_s = b.fresh();
    b.gadget(GadgetKind::Reticulation, ROOT_ROLE.into(), root_s, path[0]);
    for label in [ROOT_LEAF, ROOT_LEAF2] {
        let l = b.leaf(label);
        b.edge(root_s, l);
    }
    for k in 1..n_r {
        let s = path[(k - 1).min(n_r - 3)];
        b.gadget(GadgetKind::Reticulation, retic_role(k), s, r_vertices[k - 1]);
    }

    // clause gadgets
    let mut literal = vec![[VertexId(0); 3]; m];
    for (j, lits) in literal.iter_mut().enumerate() {
        let j1 = j + 1;
        let z = b.fresh();
        b.name(format!("z{j1}"), z);
        for (k, lit) in lits.iter_mut().enumerate() {
            let k1 = k + 1;
            *lit = b.fresh();
            b.name(format!("lit{j1}.{k1}"), *lit);
            let t = b.fresh();
            b.gadget(GadgetKind::Connection, clause_role(j1, k1), z, t);
            let leaf = b.leaf(&clause_leaf(j1, k1));
            b.edge(*lit, t);
            b.edge(t, leaf);
        }
    }

    // variable gadgets
    for i in 1..=n {
        let pos = cnf.positive_occurrences(i);
        let neg = cnf.negative_occurrences(i);
        for h in 0..2 {
            let s = literal[pos[h].0][pos[h].1];
            let t = literal[neg[h].0][neg[h].1];
            b.gadget(GadgetKind::Connection, variable_role(i, h + 1), s, t);
        }
        let r1 = b.map.must_named(&format!("r{i}.1"));
        let r2 = b.map.must_named(&format!("r{i}.2"));
        let s1 = b.map.must(&variable_role(i, 1), "s");
        let t1 = b.map.must(&variable_role(i, 1), "t");
        let s2 = b.map.must(&variable_role(i, 2), "s");
        let t2 = b.map.must(&variable_role(i, 2), "t");
        b.edge(s1, r2);
        b.edge(r2, t2);
        b.edge(t1, r1);
        b.edge(r1, s2);
    }

    let report = validate_unrooted(&b.net);
    assert!(report.is_valid(), "reduction network is malformed: {report}");
    Ok((b.net, b.map))
}

/// `2 + 2(n_r + n_c) + 3m` with `n_r = 1 + 2n` and `n_c = 3m + 2n`.
pub fn expected_leaf_count(n: usize, m: usize) -> usize {
    let n_r = 1 + 2 * n;
    let n_c = 3 * m + 2 * n;
    2 + 2 * (n_r + n_c) + 3 * m
}
