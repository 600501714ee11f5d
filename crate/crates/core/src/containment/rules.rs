use std::collections::BTreeSet;
use std::fmt;

use super::entangled::entangled_path_given_cuts;
use super::pendant::{pendant_quads, pendant_triples};
use super::{leaf_neighbor, non_trivial_given_cuts, require_same_labels, ContainError};
use crate::cuttable::is_q_cuttable;
use crate::net::{cut_edges, eliminate_edge, Edge, UndirectedNet, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Yes,
    No,
    Reduced,
}

/// Sub-case of the rule that fired. Rules 1 and 2 have a single case, shown
/// as `-`. `Unmatched` is the four-leaf case where the quartet is not
/// displayed, so the chain pattern of rule 2 is absent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleCase {
    Plain,
    I,
    II,
    III,
    IV,
    Unmatched,
}

impl fmt::Display for RuleCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Plain => "-",
            Self::I => "I",
            Self::II => "II",
            Self::III => "III",
            Self::IV => "IV",
            Self::Unmatched => "unmatched",
        })
    }
}

impl std::str::FromStr for RuleCase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "-" => Self::Plain,
            "I" => Self::I,
            "II" => Self::II,
            "III" => Self::III,
            "IV" => Self::IV,
            "unmatched" => Self::Unmatched,
            other => return Err(format!("unknown rule case {other:?}")),
        })
    }
}

/// Evidence attached to a rule outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// At most three leaves.
    FewLeaves(usize),
    /// No entangled path joins the two leaves.
    MissingPath(String, String),
    /// No entangled path joins the leaf to an inner vertex of the path,
    /// without reusing a path edge.
    MissingAttachment { leaf: String, path: Vec<VertexId> },
    /// The two cherry paths share this edge.
    SharedEdge(Edge),
    /// No entangled path with two or more edges joins the two cherry paths.
    MissingBridge { first: Vec<VertexId>, second: Vec<VertexId> },
    /// No three consecutive leaf-carrying vertices match a pendant triple.
    QuartetNotDisplayed,
    Eliminated(Edge),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleOutcome {
    pub verdict: Verdict,
    /// 1 to 4.
    pub rule: u8,
    pub case: RuleCase,
    /// Leaves the rule looked at: the pendant triple or quad of the tree.
    pub leaves: Vec<String>,
    /// Present iff the verdict is `Reduced`.
    pub reduced_net: Option<UndirectedNet>,
    pub certificate: Option<Certificate>,
}

impl RuleOutcome {
    fn decided(verdict: Verdict, rule: u8, case: RuleCase, leaves: Vec<String>, cert: Certificate) -> Self {
        RuleOutcome { verdict, rule, case, leaves, reduced_net: None, certificate: Some(cert) }
    }

    pub fn eliminated(&self) -> Option<Edge> {
        match self.certificate {
            Some(Certificate::Eliminated(e)) => Some(e),
            _ => None,
        }
    }
}

struct Ctx<'a> {
    net: &'a UndirectedNet,
    cuts: BTreeSet<Edge>,
}

impl Ctx<'_> {
    fn leaf(&self, label: &str) -> VertexId {
        self.net.vertex_of(label).expect("label sets were checked")
    }

    fn path(&self, a: VertexId, b: VertexId) -> Option<Vec<VertexId>> {
        entangled_path_given_cuts(self.net, &self.cuts, a, b)
    }

    fn reduce(&self, rule: u8, case: RuleCase, leaves: Vec<String>, e: Edge) -> Result<RuleOutcome, ContainError> {
        if self.cuts.contains(&e) {
            return Err(ContainError::Internal(format!("rule {rule} picked the cut-edge {e}")));
        }
        let reduced = eliminate_edge(self.net, e)?;
        Ok(RuleOutcome {
            verdict: Verdict::Reduced,
            rule,
            case,
            leaves,
            reduced_net: Some(reduced),
            certificate: Some(Certificate::Eliminated(e)),
        })
    }
}

fn path_edges(p: &[VertexId]) -> BTreeSet<Edge> {
    p.windows(2).map(|w| Edge::new(w[0], w[1])).collect()
}

/// The edge to eliminate when a cherry path is kept: from the inner vertex
/// of `path` nearest its start, other than `keep`, whose third edge leaves
/// the path.
fn leaving_edge(net: &UndirectedNet, path: &[VertexId], keep: VertexId) -> Option<Edge> {
    let on: BTreeSet<VertexId> = path.iter().copied().collect();
    (1..path.len().saturating_sub(1)).find_map(|i| {
        let u = path[i];
        if u == keep {
            return None;
        }
        net.neighbors(u)
            .filter(|&w| w != path[i - 1] && w != path[i + 1])
            .find(|w| !on.contains(w))
            .map(|w| Edge::new(u, w))
    })
}

/// Applies the first reduction rule that fires on a simple 3-cuttable network.
pub fn apply_reduction(tree: &UndirectedNet, net: &UndirectedNet) -> Result<RuleOutcome, ContainError> {
    require_same_labels(tree, net)?;
    let cuts = cut_edges(net);
    if let Some(&e) = non_trivial_given_cuts(net, &cuts).first() {
        return Err(ContainError::NotSimple(e));
    }
    if !is_q_cuttable(net, 3).map(|r| r.is_cuttable).unwrap_or(false) {
        return Err(ContainError::NotThreeCuttable);
    }
    let n = net.leaf_count();
    if n <= 3 {
        return Ok(RuleOutcome::decided(Verdict::Yes, 1, RuleCase::Plain, Vec::new(), Certificate::FewLeaves(n)));
    }
    let ctx = Ctx { net, cuts };
    let triples = pendant_triples(tree);

    if let Some(out) = rule_two(&ctx, &triples)? {
        return Ok(out);
    }
    if n == 4 {
        return Ok(RuleOutcome::decided(
            Verdict::No,
            2,
            RuleCase::Unmatched,
            Vec::new(),
            Certificate::QuartetNotDisplayed,
        ));
    }
    if let Some((x, y, z)) = triples.first() {
        return rule_three(&ctx, x, y, z);
    }
    if let Some((w, x, y, z)) = pendant_quads(tree).first() {
        return rule_four(&ctx, w, x, y, z);
    }
    Err(ContainError::Internal("no reduction rule applies".into()))
}

/// A path `(v1,v2,v3,v4)` of non-cut edges with `x`, `y`, `z` pendant at
/// `v2`, `v3`, `v4`, for a pendant triple `((x,y),z)`. Eliminates `{v1,v2}`.
fn rule_two(ctx: &Ctx, triples: &[(String, String, String)]) -> Result<Option<RuleOutcome>, ContainError> {
    let net = ctx.net;
    for (a, b, z) in triples {
        for (x, y) in [(a, b), (b, a)] {
            let v2 = leaf_neighbor(net, ctx.leaf(x));
            let v3 = leaf_neighbor(net, ctx.leaf(y));
            let v4 = leaf_neighbor(net, ctx.leaf(z));
            if !net.adjacent(v2, v3) || !net.adjacent(v3, v4) || v2 == v4 {
                continue;
            }
            let xv = ctx.leaf(x);
            let Some(v1) = net.neighbors(v2).find(|&w| w != xv && w != v3) else { continue };
            if v1 == v4 || net.is_leaf(v1) {
                continue;
            }
            let p = [v1, v2, v3, v4];
            let chord_is_cut = p
                .iter()
                .enumerate()
                .flat_map(|(i, &s)| p[i + 1..].iter().map(move |&t| (s, t)))
                .any(|(s, t)| net.adjacent(s, t) && ctx.cuts.contains(&Edge::new(s, t)));
            if chord_is_cut {
                continue;
            }
            let leaves = vec![x.clone(), y.clone(), z.clone()];
            return ctx.reduce(2, RuleCase::Plain, leaves, Edge::new(v1, v2)).map(Some);
        }
    }
    Ok(None)
}

fn rule_three(ctx: &Ctx, x: &str, y: &str, z: &str) -> Result<RuleOutcome, ContainError> {
    let leaves = vec![x.to_string(), y.to_string(), z.to_string()];
    let Some(p) = ctx.path(ctx.leaf(x), ctx.leaf(y)) else {
        return Ok(RuleOutcome::decided(
            Verdict::No,
            3,
            RuleCase::I,
            leaves,
            Certificate::MissingPath(x.into(), y.into()),
        ));
    };
    let on_p = path_edges(&p);
    let zv = ctx.leaf(z);
    let attach = p[1..p.len() - 1].iter().copied().find(|&v| {
        ctx.path(zv, v)
            .is_some_and(|q| path_edges(&q).is_disjoint(&on_p))
    });
    let Some(v) = attach else {
        return Ok(RuleOutcome::decided(
            Verdict::No,
            3,
            RuleCase::II,
            leaves,
            Certificate::MissingAttachment { leaf: z.into(), path: p },
        ));
    };
    let e = leaving_edge(ctx.net, &p, v)
        .ok_or_else(|| ContainError::Internal(format!("no edge leaves the path {p:?} away from {v}")))?;
    ctx.reduce(3, RuleCase::III, leaves, e)
}

fn rule_four(ctx: &Ctx, w: &str, x: &str, y: &str, z: &str) -> Result<RuleOutcome, ContainError> {
    let leaves = vec![w.to_string(), x.to_string(), y.to_string(), z.to_string()];
    let decided = |case, cert| Ok(RuleOutcome::decided(Verdict::No, 4, case, leaves.clone(), cert));
    let Some(p1) = ctx.path(ctx.leaf(x), ctx.leaf(y)) else {
        return decided(RuleCase::I, Certificate::MissingPath(x.into(), y.into()));
    };
    let Some(p2) = ctx.path(ctx.leaf(w), ctx.leaf(z)) else {
        return decided(RuleCase::I, Certificate::MissingPath(w.into(), z.into()));
    };
    let (e1, e2) = (path_edges(&p1), path_edges(&p2));
    if let Some(&shared) = e1.intersection(&e2).next() {
        return decided(RuleCase::II, Certificate::SharedEdge(shared));
    }
    let inner = |p: &[VertexId]| p[1..p.len() - 1].to_vec();
    let mut bridge_end = None;
    'outer: for a in inner(&p1) {
        for b in inner(&p2) {
            if let Some(q) = ctx.path(a, b) {
                let qe = path_edges(&q);
                if qe.len() >= 2 && qe.is_disjoint(&e1) && qe.is_disjoint(&e2) {
                    bridge_end = Some(a);
                    break 'outer;
                }
            }
        }
    }
    let Some(v1) = bridge_end else {
        return decided(RuleCase::III, Certificate::MissingBridge { first: p1, second: p2 });
    };
    let e = leaving_edge(ctx.net, &p1, v1)
        .ok_or_else(|| ContainError::Internal(format!("no edge leaves the path {p1:?} away from {v1}")))?;
    ctx.reduce(4, RuleCase::IV, leaves, e)
}
