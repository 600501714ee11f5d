use std::fmt;

use thiserror::Error;

/// Nonzero DIMACS literal: `+i` is variable `i`, `-i` its negation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal(i32);

impl Literal {
    /// Panics on zero.
    pub fn new(x: i32) -> Self {
        assert!(x != 0, "literal 0 is the clause terminator");
        Literal(x)
    }

    pub fn var(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn raw(self) -> i32 {
        self.0
    }

    pub fn eval(self, a: &Assignment) -> bool {
        a.value(self.var()) == self.is_positive()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Position of a literal: clause index and slot 0..3, both zero-based.
pub type Occurrence = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("literal {lit} refers to a variable outside 1..={n}")]
    VariableOutOfRange { lit: i32, n: usize },
}

/// 3-CNF formula with a per-variable occurrence index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfInstance {
    n: usize,
    clauses: Vec<[Literal; 3]>,
    positive: Vec<Vec<Occurrence>>,
    negative: Vec<Vec<Occurrence>>,
}

impl CnfInstance {
    pub fn new(n: usize, clauses: Vec<[Literal; 3]>) -> Result<Self, CnfError> {
        let mut positive = vec![Vec::new(); n + 1];
        let mut negative = vec![Vec::new(); n + 1];
        for (j, c) in clauses.iter().enumerate() {
            for (k, &l) in c.iter().enumerate() {
                if l.var() == 0 || l.var() > n {
                    return Err(CnfError::VariableOutOfRange { lit: l.raw(), n });
                }
                if l.is_positive() {
                    positive[l.var()].push((j, k));
                } else {
                    negative[l.var()].push((j, k));
                }
            }
        }
        Ok(Self {
            n,
            clauses,
            positive,
            negative,
        })
    }

    /// Convenience constructor from raw DIMACS triples.
    pub fn from_raw(n: usize, clauses: &[[i32; 3]]) -> Result<Self, CnfError> {
        Self::new(
            n,
            clauses.iter().map(|c| c.map(Literal::new)).collect(),
        )
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// Positive occurrences of variable `i` (1-based) in clause order.
    pub fn positive_occurrences(&self, i: usize) -> &[Occurrence] {
        &self.positive[i]
    }

    pub fn negative_occurrences(&self, i: usize) -> &[Occurrence] {
        &self.negative[i]
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        a.len() == self.n && self.clauses.iter().all(|c| c.iter().any(|l| l.eval(a)))
    }
}

/// Total truth assignment over variables `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    /// `values[i]` is the value of variable `i + 1`.
    pub fn new(values: Vec<bool>) -> Self {
        Assignment(values)
    }

    pub fn value(&self, var: usize) -> bool {
        self.0[var - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }
}

impl fmt::Display for Assignment {
    /// One character per variable, `T` or `F`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", if b { 'T' } else { 'F' })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Assignment {
    type Err = String;

    /// Accepts `TFF`-style strings, ignoring whitespace and commas.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                'T' | 't' | '1' => Ok(true),
                'F' | 'f' | '0' => Ok(false),
                other => Err(format!("unexpected character {other:?} in assignment")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Assignment)
    }
}
