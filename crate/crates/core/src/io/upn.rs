use std::collections::BTreeSet;
use std::fmt::Write;

use super::{is_valid_label, ParseError};
use crate::net::{UndirectedNet, VertexId};

fn parse_id(tok: &str, line: usize, col: usize) -> Result<VertexId, ParseError> {
    match tok.parse::<u32>() {
        Ok(x) if x > 0 && tok.bytes().all(|b| b.is_ascii_digit()) => Ok(VertexId(x)),
        _ => Err(ParseError::syntax(
            line,
            col,
            format!("expected a positive integer id, found {tok:?}"),
        )),
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Parses a UPN/1 document into a validated network.
pub fn parse_upn(text: &str) -> Result<UndirectedNet, ParseError> {
    let mut header_seen = false;
    let mut vertices = Vec::new();
    let mut declared = BTreeSet::new();
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(col, head)) = toks.first() else {
            continue;
        };
        if !header_seen {
            if head != "UPN/1" || toks.len() != 1 {
                return Err(ParseError::syntax(line_no, col, "expected header UPN/1"));
            }
            header_seen = true;
            continue;
        }
        let arity = match head {
            "V" => 2,
            "L" | "E" => 3,
            _ => {
                return Err(ParseError::syntax(
                    line_no,
                    col,
                    format!("unknown record {head:?}"),
                ))
            }
        };
        if toks.len() != arity {
            let c = toks.get(arity).map_or(content.len() + 1, |t| t.0);
            return Err(ParseError::syntax(
                line_no,
                c,
                format!("record {head} takes {} fields", arity - 1),
            ));
        }
        let declared_id = |k: usize| -> Result<VertexId, ParseError> {
            let (c, t) = toks[k];
            let v = parse_id(t, line_no, c)?;
            if !declared.contains(&v) {
                return Err(ParseError::syntax(line_no, c, format!("vertex {v} not declared")));
            }
            Ok(v)
        };
        match head {
            "V" => {
                let v = parse_id(toks[1].1, line_no, toks[1].0)?;
                declared.insert(v);
                vertices.push(v);
            }
            "L" => {
                let v = declared_id(1)?;
                let (c, l) = toks[2];
                if !is_valid_label(l) {
                    return Err(ParseError::syntax(line_no, c, format!("invalid label {l:?}")));
                }
                labels.push((v, l.to_string()));
            }
            _ => {
                let a = declared_id(1)?;
                let b = declared_id(2)?;
                edges.push((a, b));
            }
        }
    }
    if !header_seen {
        return Err(ParseError::syntax(last_line.max(1), 1, "missing header UPN/1"));
    }
    UndirectedNet::from_parts(&vertices, &edges, &labels).map_err(ParseError::Validation)
}

/// Canonical UPN/1 text: vertices, then labels, then edges, each ascending.
pub fn serialize_upn(net: &UndirectedNet) -> String {
    let mut s = String::from("UPN/1\n");
    for v in net.vertices() {
        writeln!(s, "V {v}").unwrap();
    }
    for (v, l) in net.labels() {
        writeln!(s, "L {v} {l}").unwrap();
    }
    for e in net.edges() {
        writeln!(s, "E {} {}", e.lo(), e.hi()).unwrap();
    }
    s
}
