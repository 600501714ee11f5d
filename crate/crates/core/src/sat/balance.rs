use std::collections::BTreeSet;
use std::fmt;

use super::{Assignment, CnfInstance, SatError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BalanceViolation {
    NoVariables,
    /// 2-balanced 3-CNF needs exactly `4n/3` clauses.
    ClauseCount { expected_times_three: usize, found: usize },
    Occurrences { var: usize, positive: usize, negative: usize },
    /// A literal repeated inside one clause.
    RepeatedLiteral { clause: usize },
}

impl fmt::Display for BalanceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NoVariables => write!(f, "instance has no variables"),
            Self::ClauseCount { expected_times_three, found } => write!(
                f,
                "3m = {} but 4n = {expected_times_three}",
                3 * found
            ),
            Self::Occurrences { var, positive, negative } => write!(
                f,
                "variable {var} occurs {positive} times unnegated and {negative} times negated"
            ),
            Self::RepeatedLiteral { clause } => write!(f, "clause {clause} repeats a literal"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BalanceReport {
    pub violations: Vec<BalanceViolation>,
}

impl BalanceReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for BalanceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "2-balanced");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks that every variable occurs exactly twice unnegated and twice
/// negated, which forces `3m = 4n`. Clause numbers in the report are 1-based.
pub fn validate_2balanced(cnf: &CnfInstance) -> BalanceReport {
    let mut report = BalanceReport::default();
    let n = cnf.num_vars();
    let m = cnf.num_clauses();
    if n == 0 {
        report.violations.push(BalanceViolation::NoVariables);
    }
    if 3 * m != 4 * n {
        report.violations.push(BalanceViolation::ClauseCount {
            expected_times_three: 4 * n,
            found: m,
        });
    }
    for var in 1..=n {
        let positive = cnf.positive_occurrences(var).len();
        let negative = cnf.negative_occurrences(var).len();
        if positive != 2 || negative != 2 {
            report.violations.push(BalanceViolation::Occurrences { var, positive, negative });
        }
    }
    for (j, c) in cnf.clauses().iter().enumerate() {
        if c.iter().collect::<BTreeSet<_>>().len() < 3 {
            report.violations.push(BalanceViolation::RepeatedLiteral { clause: j + 1 });
        }
    }
    report
}

/// Largest variable count `sat_bruteforce` accepts.
pub const SAT_BRUTEFORCE_LIMIT: usize = 24;

/// First satisfying assignment in lexicographic order with `F < T` and
/// variable 1 most significant.
pub fn sat_bruteforce(cnf: &CnfInstance) -> Result<Option<Assignment>, SatError> {
    let n = cnf.num_vars();
    if n > SAT_BRUTEFORCE_LIMIT {
        return Err(SatError::TooLarge { n, limit: SAT_BRUTEFORCE_LIMIT });
    }
    for mask in 0u64..(1u64 << n) {
        let values = (0..n).map(|i| mask >> (n - 1 - i) & 1 == 1).collect();
        let a = Assignment::new(values);
        if cnf.is_satisfied_by(&a) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}
