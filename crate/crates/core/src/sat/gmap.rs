use std::collections::BTreeMap;
use std::fmt::Write;

use super::{GadgetCopy, GadgetKind, GadgetMap};
use crate::io::ParseError;
use crate::net::VertexId;

/// GMAP/1 text: header, `N <n> <m>`, one `G <kind> <role> <name> <id>` line
/// per gadget vertex, and one `I <key> <id>` line per shared vertex.
pub fn serialize_gmap(gmap: &GadgetMap) -> String {
    let mut s = format!("GMAP/1\nN {} {}\n", gmap.n, gmap.m);
    for g in &gmap.gadgets {
        for (name, v) in &g.vertices {
            writeln!(s, "G {} {} {} {}", g.kind.code(), g.role, name, v).unwrap();
        }
    }
    for (key, v) in &gmap.named {
        writeln!(s, "I {key} {v}").unwrap();
    }
    s
}

pub fn parse_gmap(text: &str) -> Result<GadgetMap, ParseError> {
    let mut map = GadgetMap::default();
    let mut header = false;
    let mut counts = false;
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        let Some(&head) = toks.first() else { continue };
        let col = raw.find(head).map_or(1, |c| c + 1);
        if !header {
            if toks != ["GMAP/1"] {
                return Err(ParseError::syntax(line, col, "expected header GMAP/1"));
            }
            header = true;
            continue;
        }
        let id = |tok: &str| -> Result<VertexId, ParseError> {
            match tok.parse::<u32>() {
                Ok(x) if x > 0 => Ok(VertexId(x)),
                _ => Err(ParseError::syntax(line, col, format!("bad vertex id {tok:?}"))),
            }
        };
        let count = |tok: &str| -> Result<usize, ParseError> {
            tok.parse()
                .map_err(|_| ParseError::syntax(line, col, format!("bad count {tok:?}")))
        };
        match (head, toks.len()) {
            ("N", 3) if !counts => {
                map.n = count(toks[1])?;
                map.m = count(toks[2])?;
                counts = true;
            }
            ("G", 5) => {
                let kind = match toks[1] {
                    "C" => GadgetKind::Connection,
                    "R" => GadgetKind::Reticulation,
                    k => return Err(ParseError::syntax(line, col, format!("unknown gadget kind {k:?}"))),
                };
                let role = toks[2].to_string();
                let slot = *index.entry(role.clone()).or_insert_with(|| {
                    map.gadgets.push(GadgetCopy { kind, role, vertices: BTreeMap::new() });
                    map.gadgets.len() - 1
                });
                let g = &mut map.gadgets[slot];
                if g.kind != kind {
                    return Err(ParseError::syntax(line, col, format!("gadget {} changes kind", g.role)));
                }
                if g.vertices.insert(toks[3].to_string(), id(toks[4])?).is_some() {
                    return Err(ParseError::syntax(line, col, format!("{}.{} given twice", g.role, toks[3])));
                }
            }
            ("I", 3) => {
                if map.named.insert(toks[1].to_string(), id(toks[2])?).is_some() {
                    return Err(ParseError::syntax(line, col, format!("{} given twice", toks[1])));
                }
            }
            _ => return Err(ParseError::syntax(line, col, format!("malformed record {head:?}"))),
        }
    }
    if !header {
        return Err(ParseError::syntax(1, 1, "missing header GMAP/1"));
    }
    if !counts {
        return Err(ParseError::syntax(text.lines().count().max(1), 1, "missing N record"));
    }
    for g in &map.gadgets {
        for name in g.kind.names() {
            if !g.vertices.contains_key(name) {
                return Err(ParseError::syntax(1, 1, format!("gadget {} lacks vertex {name}", g.role)));
            }
        }
    }
    Ok(map)
}
