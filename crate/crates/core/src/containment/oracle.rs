use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::algorithm::require_tree;
use super::embedding::{verify_embedding, Embedding};
use super::{require_same_labels, ContainError};
use crate::net::{Edge, UndirectedNet, VertexId};

/// Search steps allowed by [`display_oracle`].
pub const DEFAULT_ORACLE_BUDGET: usize = 5_000_000;

/// Exhaustive embedding search with the default budget.
pub fn display_oracle(tree: &UndirectedNet, net: &UndirectedNet) -> Result<Option<Embedding>, ContainError> {
    display_oracle_with_budget(tree, net, DEFAULT_ORACLE_BUDGET)
}

/// Backtracking search for an embedding of `tree` in `net`.
///
/// The tree is walked depth-first from its smallest leaf. Each tree edge is
/// realised by extending a path from the image of its upper end through
/// unused network edges, and the path's last vertex becomes the image of the
/// lower end. After each placement every pending subtree must still reach
/// all of its leaves through unused edges, or the branch is abandoned.
pub fn display_oracle_with_budget(
    tree: &UndirectedNet,
    net: &UndirectedNet,
    budget: usize,
) -> Result<Option<Embedding>, ContainError> {
    require_tree(tree)?;
    require_same_labels(tree, net)?;
    let Some(root) = tree.labels().min_by(|a, b| a.1.cmp(b.1)).map(|(v, _)| v) else {
        return Ok(Some(Embedding::default()));
    };
    let leaf_image = |t: VertexId| -> VertexId {
        let label = tree.label(t).expect("tree leaves are labelled");
        net.vertex_of(label).expect("label sets were checked")
    };

    let mut order = Vec::new();
    let mut stack = vec![(root, root)];
    while let Some((parent, v)) = stack.pop() {
        if v != root {
            order.push((parent, v));
        }
        let mut kids: Vec<VertexId> = tree.neighbors(v).filter(|&w| w != parent).collect();
        kids.sort();
        for w in kids.into_iter().rev() {
            stack.push((v, w));
        }
    }
    let below: Vec<Vec<VertexId>> = order
        .iter()
        .map(|&(p, c)| {
            crate::net::structure::labels_beyond(tree, Edge::new(p, c), c)
                .iter()
                .map(|l| net.vertex_of(l).expect("label sets were checked"))
                .collect()
        })
        .collect();
    let targets: Vec<Option<VertexId>> = order
        .iter()
        .map(|&(_, c)| tree.is_leaf(c).then(|| leaf_image(c)))
        .collect();

    let mut s = Search {
        net,
        order: &order,
        below: &below,
        targets: &targets,
        img: BTreeMap::from([(root, leaf_image(root))]),
        used_img: BTreeSet::from([leaf_image(root)]),
        used_edges: BTreeSet::new(),
        paths: BTreeMap::new(),
        steps: 0,
        budget,
    };
    if !s.place(0)? {
        return Ok(None);
    }
    let emb = Embedding { vertex_map: s.img, edge_map: s.paths };
    debug_assert!(verify_embedding(tree, net, &emb).map(|c| c.is_valid()).unwrap_or(false));
    Ok(Some(emb))
}

struct Search<'a> {
    net: &'a UndirectedNet,
    order: &'a [(VertexId, VertexId)],
    below: &'a [Vec<VertexId>],
    targets: &'a [Option<VertexId>],
    img: BTreeMap<VertexId, VertexId>,
    used_img: BTreeSet<VertexId>,
    used_edges: BTreeSet<Edge>,
    paths: BTreeMap<Edge, Vec<VertexId>>,
    steps: usize,
    budget: usize,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<(), ContainError> {
        self.steps += 1;
        if self.steps > self.budget {
            Err(ContainError::BudgetExceeded(self.budget))
        } else {
            Ok(())
        }
    }

    /// Places tree edges `k..`; true once all are placed.
    fn place(&mut self, k: usize) -> Result<bool, ContainError> {
        if k == self.order.len() {
            return Ok(true);
        }
        let start = self.img[&self.order[k].0];
        let mut path = vec![start];
        self.extend(k, &mut path)
    }

    fn free_degree(&self, v: VertexId) -> usize {
        self.net
            .incident_edges(v)
            .filter(|e| !self.used_edges.contains(e))
            .count()
    }

    fn extend(&mut self, k: usize, path: &mut Vec<VertexId>) -> Result<bool, ContainError> {
        self.tick()?;
        let cur = *path.last().expect("paths are never empty");
        let nbrs: Vec<VertexId> = self.net.neighbors(cur).collect();
        for w in nbrs {
            let f = Edge::new(cur, w);
            if self.used_edges.contains(&f) || path.contains(&w) {
                continue;
            }
            match self.targets[k] {
                Some(t) if w == t => {
                    if self.try_assign(k, path, w, f)? {
                        return Ok(true);
                    }
                    continue;
                }
                _ => {}
            }
            if self.net.is_leaf(w) || self.used_img.contains(&w) {
                continue;
            }
            let fresh = self.free_degree(w) == 3;
            self.used_edges.insert(f);
            path.push(w);
            if self.targets[k].is_none() && fresh {
                self.used_edges.remove(&f);
                path.pop();
                if self.try_assign(k, path, w, f)? {
                    return Ok(true);
                }
                self.used_edges.insert(f);
                path.push(w);
            }
            let found = self.extend(k, path)?;
            path.pop();
            self.used_edges.remove(&f);
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Ends the current path at `w` as the image of the tree edge's lower end.
    fn try_assign(&mut self, k: usize, path: &mut Vec<VertexId>, w: VertexId, f: Edge) -> Result<bool, ContainError> {
        let (p, c) = self.order[k];
        let te = Edge::new(p, c);
        path.push(w);
        let mut stored = path.clone();
        if te.lo() != p {
            stored.reverse();
        }
        self.used_edges.insert(f);
        self.img.insert(c, w);
        self.used_img.insert(w);
        self.paths.insert(te, stored);
        if self.feasible(k + 1) && self.place(k + 1)? {
            path.pop();
            return Ok(true);
        }
        self.paths.remove(&te);
        self.used_img.remove(&w);
        self.img.remove(&c);
        self.used_edges.remove(&f);
        path.pop();
        Ok(false)
    }

    /// Every pending tree edge whose upper end is placed can still reach all
    /// leaves below it through unused edges and unplaced vertices.
    fn feasible(&self, from: usize) -> bool {
        let mut reach: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
        for k in from..self.order.len() {
            let Some(&start) = self.img.get(&self.order[k].0) else { continue };
            let seen = reach.entry(start).or_insert_with(|| self.reachable(start));
            if !self.below[k].iter().all(|l| seen.contains(l)) {
                return false;
            }
        }
        true
    }

    fn reachable(&self, start: VertexId) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            if v != start && (self.net.is_leaf(v) || self.used_img.contains(&v)) {
                continue;
            }
            for w in self.net.neighbors(v) {
                if !self.used_edges.contains(&Edge::new(v, w)) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }
}
