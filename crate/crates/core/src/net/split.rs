use std::collections::BTreeSet;
use std::fmt;

/// Bipartition `side_a | side_b` of a leaf set. The side holding the
/// lexicographically smallest label is always `side_a`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Split {
    side_a: BTreeSet<String>,
    side_b: BTreeSet<String>,
}

impl Split {
    /// `None` if either side is empty or the sides overlap.
    pub fn new(x: BTreeSet<String>, y: BTreeSet<String>) -> Option<Self> {
        if x.is_empty() || y.is_empty() || !x.is_disjoint(&y) {
            return None;
        }
        let (a, b) = if x.first() < y.first() { (x, y) } else { (y, x) };
        Some(Split {
            side_a: a,
            side_b: b,
        })
    }

    pub fn side_a(&self) -> &BTreeSet<String> {
        &self.side_a
    }

    pub fn side_b(&self) -> &BTreeSet<String> {
        &self.side_b
    }

    /// Smaller side, ties going to `side_a`.
    pub fn smaller_side(&self) -> &BTreeSet<String> {
        if self.side_b.len() < self.side_a.len() {
            &self.side_b
        } else {
            &self.side_a
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.side_a.len() == 1 || self.side_b.len() == 1
    }

    /// Side containing `label`, if any.
    pub fn side_of(&self, label: &str) -> Option<&BTreeSet<String>> {
        if self.side_a.contains(label) {
            Some(&self.side_a)
        } else if self.side_b.contains(label) {
            Some(&self.side_b)
        } else {
            None
        }
    }

    /// Compatible iff one of the four side intersections is empty.
    pub fn compatible(&self, other: &Split) -> bool {
        let mine = [&self.side_a, &self.side_b];
        let theirs = [&other.side_a, &other.side_b];
        mine.iter()
            .any(|m| theirs.iter().any(|t| m.is_disjoint(t)))
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<&str> = self.side_a.iter().map(String::as_str).collect();
        let b: Vec<&str> = self.side_b.iter().map(String::as_str).collect();
        write!(f, "{}|{}", a.join(","), b.join(","))
    }
}
