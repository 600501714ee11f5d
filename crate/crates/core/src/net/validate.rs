use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Edge, RootedNet, UndirectedNet, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Empty,
    Disconnected { components: usize },
    BadDegree { vertex: VertexId, degree: usize },
    BadRootedDegree { vertex: VertexId, indegree: usize, outdegree: usize },
    UnlabeledLeaf(VertexId),
    LabeledInternal(VertexId),
    DuplicateLabel(String),
    DuplicateVertex(VertexId),
    UnknownVertex(VertexId),
    ParallelEdge(Edge),
    SelfLoop(VertexId),
    MissingRoot,
    Cyclic(Vec<VertexId>),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "network has no vertices"),
            Violation::Disconnected { components } => {
                write!(f, "network is disconnected ({components} components)")
            }
            Violation::BadDegree { vertex, degree } => {
                write!(f, "vertex {vertex} has degree {degree}")
            }
            Violation::BadRootedDegree {
                vertex,
                indegree,
                outdegree,
            } => write!(
                f,
                "vertex {vertex} has in-degree {indegree} and out-degree {outdegree}"
            ),
            Violation::UnlabeledLeaf(v) => write!(f, "leaf {v} has no label"),
            Violation::LabeledInternal(v) => write!(f, "internal vertex {v} carries a label"),
            Violation::DuplicateLabel(l) => write!(f, "label {l:?} used more than once"),
            Violation::DuplicateVertex(v) => write!(f, "vertex {v} declared more than once"),
            Violation::UnknownVertex(v) => write!(f, "vertex {v} referenced but not declared"),
            Violation::ParallelEdge(e) => write!(f, "parallel edge {e}"),
            Violation::SelfLoop(v) => write!(f, "self-loop at {v}"),
            Violation::MissingRoot => write!(f, "no root"),
            Violation::Cyclic(c) => {
                let s: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                write!(f, "directed cycle {}", s.join(" -> "))
            }
        }
    }
}

/// List of invariant violations; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", s.join("; "))
    }
}

/// Checks connectivity, degrees and labelling of an unrooted network.
pub fn validate_unrooted(net: &UndirectedNet) -> ValidationReport {
    let mut report = ValidationReport::default();
    if net.vertex_count() == 0 {
        report.push(Violation::Empty);
        return report;
    }
    let comps = super::structure::connected_components(net).len();
    if comps > 1 {
        report.push(Violation::Disconnected { components: comps });
    }
    // a lone vertex is the terminal state of cherry picking, not a network
    if net.vertex_count() == 1 {
        report.push(Violation::BadDegree {
            vertex: net.vertices().next().unwrap(),
            degree: 0,
        });
        return report;
    }
    for v in net.vertices() {
        let d = net.degree(v);
        match d {
            1 => {
                if net.label(v).is_none() {
                    report.push(Violation::UnlabeledLeaf(v));
                }
            }
            3 => {
                if net.label(v).is_some() {
                    report.push(Violation::LabeledInternal(v));
                }
            }
            _ => report.push(Violation::BadDegree { vertex: v, degree: d }),
        }
    }
    report
}

/// Checks the rooted degree rules, labelling and acyclicity.
pub fn validate_rooted(net: &RootedNet) -> ValidationReport {
    let mut report = ValidationReport::default();
    if net.vertex_count() == 0 {
        report.push(Violation::Empty);
        return report;
    }
    let root = net.root();
    if root.is_none() {
        report.push(Violation::MissingRoot);
    }
    for v in net.vertices() {
        let (i, o) = (net.in_degree(v), net.out_degree(v));
        let ok = if Some(v) == root {
            (i, o) == (0, 2)
        } else {
            matches!((i, o), (1, 0) | (1, 2) | (2, 1))
        };
        if !ok {
            report.push(Violation::BadRootedDegree {
                vertex: v,
                indegree: i,
                outdegree: o,
            });
        }
        if o == 0 && net.label(v).is_none() {
            report.push(Violation::UnlabeledLeaf(v));
        }
        if o > 0 && net.label(v).is_some() {
            report.push(Violation::LabeledInternal(v));
        }
    }
    if let Some(c) = net.find_cycle() {
        report.push(Violation::Cyclic(c));
    }
    report
}

impl UndirectedNet {
    /// Builds a network from raw records, reporting every structural problem
    /// that the data model cannot represent (duplicates, loops, parallel edges)
    /// together with the usual network violations.
    pub fn from_parts(
        vertices: &[VertexId],
        edges: &[(VertexId, VertexId)],
        labels: &[(VertexId, String)],
    ) -> Result<UndirectedNet, ValidationReport> {
        let mut report = ValidationReport::default();
        let mut net = UndirectedNet::new();
        for &v in vertices {
            if !net.insert_vertex(v) {
                report.push(Violation::DuplicateVertex(v));
            }
        }
        for &(a, b) in edges {
            if a == b {
                report.push(Violation::SelfLoop(a));
                continue;
            }
            let mut missing = false;
            for v in [a, b] {
                if !net.has_vertex(v) {
                    report.push(Violation::UnknownVertex(v));
                    missing = true;
                }
            }
            if missing {
                continue;
            }
            if net.add_edge(a, b).is_err() {
                report.push(Violation::ParallelEdge(Edge::new(a, b)));
            }
        }
        let mut seen: BTreeMap<&str, VertexId> = BTreeMap::new();
        let mut labelled: BTreeSet<VertexId> = BTreeSet::new();
        for (v, l) in labels {
            if !net.has_vertex(*v) {
                report.push(Violation::UnknownVertex(*v));
                continue;
            }
            if seen.insert(l.as_str(), *v).is_some() || !labelled.insert(*v) {
                report.push(Violation::DuplicateLabel(l.clone()));
                continue;
            }
            net.set_label(*v, l)
                .expect("label uniqueness checked above");
        }
        report.violations.extend(validate_unrooted(&net).violations);
        if report.is_valid() {
            Ok(net)
        } else {
            Err(report)
        }
    }
}
