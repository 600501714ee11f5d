//! Seeded generators for trees, q-cuttable networks, displayed trees and
//! 2-balanced formulas. Every output is a pure function of its inputs.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cuttable::is_q_cuttable;
use crate::net::{cut_edges, eliminate_edge, level, Edge, NetError, UndirectedNet};
use crate::sat::{CnfInstance, Literal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("variable count {0} is not a positive multiple of 3")]
    InvalidN(usize),
    #[error("generator gave up: {0}")]
    Infeasible(String),
    #[error(transparent)]
    Net(#[from] NetError),
}

/// Parameters for [`random_q_cuttable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    /// Leaves of the initial tree; augmentation may add more.
    pub leaf_count: usize,
    pub target_r: usize,
    pub target_q: usize,
    /// Upper bound on the level of the output; 0 leaves it unbounded.
    pub target_level: usize,
}

impl GenConfig {
    pub fn new(seed: u64, leaf_count: usize, target_r: usize, target_q: usize) -> Self {
        GenConfig {
            seed,
            leaf_count,
            target_r,
            target_q,
            target_level: 0,
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Labels `x1..xn`.
pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Binary tree by attaching leaves one at a time to uniformly chosen edges.
pub fn random_tree(labels: &[String], seed: u64) -> Result<UndirectedNet, GenError> {
    if labels.len() < 2 {
        return Err(GenError::InvalidConfig("need at least two labels".into()));
    }
    let mut r = rng(seed);
    let mut net = UndirectedNet::new();
    let a = net.add_leaf(&labels[0])?;
    let b = net.add_leaf(&labels[1])?;
    net.add_edge(a, b)?;
    for l in &labels[2..] {
        let edges: Vec<Edge> = net.edges().collect();
        let e = edges[r.gen_range(0..edges.len())];
        let mid = net.subdivide_mut(e)?;
        let leaf = net.add_leaf(l)?;
        net.add_edge(mid, leaf)?;
    }
    Ok(net)
}

/// Adds one handle: subdivides two distinct edges and joins the new vertices.
fn add_handle(net: &mut UndirectedNet, e1: Edge, e2: Edge) -> Result<(), NetError> {
    let s1 = net.subdivide_mut(e1)?;
    let s2 = net.subdivide_mut(e2)?;
    net.add_edge(s1, s2)?;
    Ok(())
}

/// Subdivides the smallest edge of each witness cycle with `q` new vertices,
/// each carrying a fresh `aug_<k>` leaf, until the network is q-cuttable.
pub fn make_q_cuttable(net: &UndirectedNet, q: usize) -> Result<UndirectedNet, GenError> {
    if q == 0 {
        return Err(GenError::InvalidConfig("q must be at least 1".into()));
    }
    let mut out = net.clone();
    let mut k = 0usize;
    loop {
        let report = is_q_cuttable(&out, q).expect("q >= 1");
        let Some(cycle) = report.witness_cycle else {
            return Ok(out);
        };
        let n = cycle.len();
        let e = (0..n)
            .map(|i| Edge::new(cycle[i], cycle[(i + 1) % n]))
            .min()
            .unwrap();
        out.remove_edge(e)?;
        let mut prev = e.lo();
        for _ in 0..q {
            let v = out.add_vertex();
            out.add_edge(prev, v)?;
            let label = loop {
                k += 1;
                let l = format!("aug_{k}");
                if out.vertex_of(&l).is_none() {
                    break l;
                }
            };
            let leaf = out.add_leaf(&label)?;
            out.add_edge(v, leaf)?;
            prev = v;
        }
        out.add_edge(prev, e.hi())?;
    }
}

/// Random tree plus `target_r` handles, then augmented to be q-cuttable.
pub fn random_q_cuttable(config: &GenConfig) -> Result<UndirectedNet, GenError> {
    if config.leaf_count < 2 {
        return Err(GenError::InvalidConfig("leaf_count must be at least 2".into()));
    }
    if config.target_q == 0 {
        return Err(GenError::InvalidConfig("target_q must be at least 1".into()));
    }
    if config.leaf_count == 2 && config.target_r > 0 {
        // a single edge offers no two distinct edges to join
        return Err(GenError::InvalidConfig(
            "a two-leaf tree cannot carry a handle".into(),
        ));
    }
    let mut r = rng(config.seed);
    // a level cap can paint the sampler into a corner; start over from a
    // fresh tree when a handle cannot be placed
    const RESTARTS: usize = 50;
    const MAX_REJECTIONS: usize = 2_000;
    for _ in 0..RESTARTS {
        if let Some(net) = try_handles(config, &mut r, MAX_REJECTIONS)? {
            return make_q_cuttable(&net, config.target_q);
        }
    }
    Err(GenError::Infeasible(format!(
        "could not place {} handles within level {}",
        config.target_r, config.target_level
    )))
}

fn try_handles(
    config: &GenConfig,
    r: &mut ChaCha8Rng,
    max_rejections: usize,
) -> Result<Option<UndirectedNet>, GenError> {
    let mut net = random_tree(&default_labels(config.leaf_count), r.gen())?;
    let mut rejections = 0;
    let mut added = 0;
    while added < config.target_r {
        let edges: Vec<Edge> = net.edges().collect();
        let i = r.gen_range(0..edges.len());
        let j = r.gen_range(0..edges.len());
        let ok = i != j && {
            let mut trial = net.clone();
            add_handle(&mut trial, edges[i], edges[j])?;
            let within = config.target_level == 0 || level(&trial) <= config.target_level;
            if within {
                net = trial;
            }
            within
        };
        if ok {
            added += 1;
        } else {
            rejections += 1;
            if rejections > max_rejections {
                return Ok(None);
            }
        }
    }
    Ok(Some(net))
}

/// Eliminates random non-cut edges until a tree remains. Draws that would
/// create a parallel edge are skipped in favour of another edge.
pub fn sample_displayed_tree(net: &UndirectedNet, seed: u64) -> Result<UndirectedNet, GenError> {
    let mut r = rng(seed);
    let mut cur = net.clone();
    while cur.reticulation_number() > 0 {
        let cuts = cut_edges(&cur);
        let mut cands: Vec<Edge> = cur.edges().filter(|e| !cuts.contains(e)).collect();
        cands.shuffle(&mut r);
        let mut next = None;
        for e in cands {
            match eliminate_edge(&cur, e) {
                Ok(n) => {
                    next = Some(n);
                    break;
                }
                Err(NetError::WouldCreateParallelEdge(..)) => continue,
                Err(other) => return Err(other.into()),
            }
        }
        cur = next.ok_or_else(|| {
            GenError::Infeasible("every non-cut edge elimination creates a parallel edge".into())
        })?;
    }
    Ok(cur)
}

/// Random 2-balanced 3-CNF on `n` variables: the `4n` literal slots are
/// shuffled into clauses of three, rejecting shuffles that repeat a variable
/// inside a clause.
pub fn random_2balanced_cnf(n: usize, seed: u64) -> Result<CnfInstance, GenError> {
    if n == 0 || !n.is_multiple_of(3) {
        return Err(GenError::InvalidN(n));
    }
    let mut r = rng(seed);
    let mut slots: Vec<i32> = (1..=n as i32).flat_map(|v| [v, v, -v, -v]).collect();
    loop {
        slots.shuffle(&mut r);
        let ok = slots.chunks(3).all(|c| {
            let vars: BTreeSet<u32> = c.iter().map(|x| x.unsigned_abs()).collect();
            vars.len() == 3
        });
        if ok {
            let clauses = slots
                .chunks(3)
                .map(|c| [Literal::new(c[0]), Literal::new(c[1]), Literal::new(c[2])])
                .collect();
            return Ok(CnfInstance::new(n, clauses).expect("literals in range"));
        }
    }
}

/// A containment instance `(tree, net)` whose network is 3-cuttable with at
/// most `max_leaves` leaves and between 1 and `max_r` reticulations.
///
/// Networks are random trees with handles, kept only when they are already
/// 3-cuttable. The tree is sampled from the network when `displayed` is set
/// and is a random tree on the same leaves otherwise.
pub fn random_containment_instance(
    seed: u64,
    max_leaves: usize,
    max_r: usize,
    displayed: bool,
) -> Result<(UndirectedNet, UndirectedNet), GenError> {
    if max_leaves < 4 || max_r == 0 {
        return Err(GenError::InvalidConfig("need max_leaves >= 4 and max_r >= 1".into()));
    }
    const ATTEMPTS: usize = 10_000;
    let mut r = rng(seed);
    for _ in 0..ATTEMPTS {
        let cfg = GenConfig::new(r.gen(), r.gen_range(4..=max_leaves), r.gen_range(1..=max_r), 1);
        let net = random_q_cuttable(&cfg)?;
        if net.leaf_count() > max_leaves || !is_q_cuttable(&net, 3).expect("q >= 1").is_cuttable {
            continue;
        }
        let tree = if displayed {
            sample_displayed_tree(&net, r.gen())?
        } else {
            let labels: Vec<String> = net.label_set().into_iter().collect();
            random_tree(&labels, r.gen())?
        };
        return Ok((tree, net));
    }
    Err(GenError::Infeasible(format!("no 3-cuttable network within {ATTEMPTS} draws")))
}
