use std::fmt::Write;

use super::ParseError;
use crate::sat::{CnfInstance, Literal};

/// Parses DIMACS CNF where every clause must have exactly three literals.
pub fn parse_dimacs_cnf(text: &str) -> Result<CnfInstance, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<[Literal; 3]> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut clause_line = 0;
    let mut last_line = 1;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let trimmed = line.trim_start();
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let col_of = |tok: &str| tok.as_ptr() as usize - line.as_ptr() as usize + 1;
        if trimmed.starts_with('p') {
            let toks: Vec<&str> = trimmed.split_whitespace().collect();
            if header.is_some() {
                return Err(ParseError::syntax(line_no, col_of(trimmed), "second problem line"));
            }
            if toks.len() != 4 || toks[0] != "p" || toks[1] != "cnf" {
                return Err(ParseError::syntax(line_no, col_of(trimmed), "expected 'p cnf <vars> <clauses>'"));
            }
            let n = toks[2]
                .parse::<usize>()
                .map_err(|_| ParseError::syntax(line_no, col_of(toks[2]), "bad variable count"))?;
            let m = toks[3]
                .parse::<usize>()
                .map_err(|_| ParseError::syntax(line_no, col_of(toks[3]), "bad clause count"))?;
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(ParseError::syntax(line_no, col_of(trimmed), "clause before problem line"));
        };
        for tok in line.split_whitespace() {
            let x: i64 = tok
                .parse()
                .map_err(|_| ParseError::syntax(line_no, col_of(tok), format!("bad literal {tok:?}")))?;
            if x == 0 {
                if current.len() != 3 {
                    return Err(ParseError::ClauseArity {
                        line: if current.is_empty() { line_no } else { clause_line },
                        clause: clauses.len() + 1,
                        found: current.len(),
                    });
                }
                clauses.push([current[0], current[1], current[2]]);
                current.clear();
                continue;
            }
            if x.unsigned_abs() as usize > n {
                return Err(ParseError::syntax(
                    line_no,
                    col_of(tok),
                    format!("literal {x} exceeds variable count {n}"),
                ));
            }
            if current.is_empty() {
                clause_line = line_no;
            }
            current.push(Literal::new(x as i32));
        }
    }
    let Some((n, m)) = header else {
        return Err(ParseError::syntax(last_line, 1, "missing problem line"));
    };
    if !current.is_empty() {
        return Err(ParseError::syntax(last_line, 1, "unterminated clause"));
    }
    if clauses.len() != m {
        return Err(ParseError::syntax(
            last_line,
            1,
            format!("header announces {m} clauses, found {}", clauses.len()),
        ));
    }
    CnfInstance::new(n, clauses).map_err(|e| ParseError::syntax(last_line, 1, e.to_string()))
}

/// Canonical DIMACS: problem line, then one clause per line.
pub fn serialize_dimacs_cnf(cnf: &CnfInstance) -> String {
    let mut s = format!("p cnf {} {}\n", cnf.num_vars(), cnf.num_clauses());
    for c in cnf.clauses() {
        writeln!(s, "{} {} {} 0", c[0], c[1], c[2]).unwrap();
    }
    s
}
