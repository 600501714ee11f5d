use std::collections::{BTreeMap, BTreeSet};

use super::{is_label_byte, ParseError};
use crate::net::{
    validate_rooted, validate_unrooted, RootedNet, UndirectedNet, VertexId, Violation,
};

/// Parsed Newick node before graph construction.
#[derive(Debug)]
struct Node {
    children: Vec<Node>,
    label: Option<String>,
    hybrid: Option<String>,
    line: usize,
    col: usize,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::syntax(self.line, self.col, msg)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) {
        if let Some(b) = self.peek() {
            self.pos += 1;
            if b == b'\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.bump();
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(b) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected {:?}", b as char)))
        }
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(is_label_byte) {
            self.bump();
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    /// `:number`, parsed and dropped.
    fn branch_length(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() != Some(b':') {
            return Ok(());
        }
        self.bump();
        self.skip_ws();
        let (line, col) = (self.line, self.col);
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|b| b.is_ascii_digit() || matches!(b, b'.' | b'-' | b'+' | b'e' | b'E'))
        {
            self.bump();
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        if s.parse::<f64>().is_err() {
            return Err(ParseError::syntax(line, col, "malformed branch length"));
        }
        Ok(())
    }

    fn node(&mut self, depth: usize) -> Result<Node, ParseError> {
        if depth > 10_000 {
            return Err(self.err("nesting too deep"));
        }
        self.skip_ws();
        let (line, col) = (self.line, self.col);
        let mut children = Vec::new();
        if self.peek() == Some(b'(') {
            self.bump();
            loop {
                children.push(self.node(depth + 1)?);
                self.skip_ws();
                match self.peek() {
                    Some(b',') => self.bump(),
                    Some(b')') => {
                        self.bump();
                        break;
                    }
                    _ => return Err(self.err("expected ',' or ')'")),
                }
            }
        }
        self.skip_ws();
        let name = self.word();
        let mut hybrid = None;
        if self.peek() == Some(b'#') {
            self.bump();
            let (hl, hc) = (self.line, self.col);
            let tag = self.word();
            let ok = tag.len() > 1
                && tag.starts_with('H')
                && tag[1..].bytes().all(|b| b.is_ascii_digit());
            if !ok {
                return Err(ParseError::syntax(hl, hc, format!("bad hybrid tag #{tag}")));
            }
            hybrid = Some(tag);
        }
        self.branch_length()?;
        Ok(Node {
            children,
            label: (!name.is_empty()).then_some(name),
            hybrid,
            line,
            col,
        })
    }

    fn document(mut self) -> Result<Node, ParseError> {
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.err("empty input"));
        }
        let root = self.node(0)?;
        self.expect(b';')?;
        self.skip_ws();
        if self.peek().is_some() {
            return Err(self.err("trailing characters after ';'"));
        }
        Ok(root)
    }
}

fn parse_tree_text(text: &str) -> Result<Node, ParseError> {
    Parser::new(text).document()
}

fn degree_error(report: &crate::net::ValidationReport) -> Option<ParseError> {
    report.violations.iter().find_map(|v| match v {
        Violation::BadRootedDegree { .. } | Violation::MissingRoot => {
            Some(ParseError::Degree(v.to_string()))
        }
        Violation::Cyclic(c) => {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            Some(ParseError::Cycle(s.join(" -> ")))
        }
        _ => None,
    })
}

/// Parses extended Newick; nodes sharing a `#H<k>` tag are one reticulation.
pub fn parse_enewick(text: &str) -> Result<RootedNet, ParseError> {
    let root = parse_tree_text(text)?;
    let mut net = RootedNet::new();
    let mut hybrids: BTreeMap<String, VertexId> = BTreeMap::new();
    let mut defined: BTreeSet<String> = BTreeSet::new();
    let mut arc_err: Option<ParseError> = None;
    let mut label_err: Option<ParseError> = None;

    // iterative build: (node, parent vertex)
    let mut stack: Vec<(&Node, Option<VertexId>)> = vec![(&root, None)];
    let mut root_vertex = None;
    while let Some((node, parent)) = stack.pop() {
        let v = match &node.hybrid {
            Some(tag) => *hybrids
                .entry(tag.clone())
                .or_insert_with(|| net.add_vertex()),
            None => net.add_vertex(),
        };
        if let Some(tag) = &node.hybrid {
            if (!node.children.is_empty() || node.label.is_some()) && !defined.insert(tag.clone()) {
                return Err(ParseError::syntax(
                    node.line,
                    node.col,
                    format!("hybrid #{tag} defined twice"),
                ));
            }
        }
        match parent {
            Some(p) => {
                if net.add_arc(p, v).is_err() && arc_err.is_none() {
                    arc_err = Some(ParseError::Degree(format!(
                        "parallel arcs between {p} and {v}"
                    )));
                }
            }
            None => root_vertex = Some(v),
        }
        if node.children.is_empty() {
            if let Some(l) = &node.label {
                if net.set_label(v, l).is_err() && label_err.is_none() {
                    label_err = Some(ParseError::syntax(
                        node.line,
                        node.col,
                        format!("duplicate label {l:?}"),
                    ));
                }
            }
        }
        for c in node.children.iter().rev() {
            stack.push((c, Some(v)));
        }
    }
    if let Some(e) = label_err {
        return Err(e);
    }
    if let Some(e) = arc_err {
        return Err(e);
    }
    net.set_root(root_vertex.expect("root node exists"))
        .expect("root vertex was created");
    let report = validate_rooted(&net);
    if report.is_valid() {
        return Ok(net);
    }
    if let Some(c) = report.violations.iter().find_map(|v| match v {
        Violation::Cyclic(c) => Some(c.clone()),
        _ => None,
    }) {
        let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        return Err(ParseError::Cycle(s.join(" -> ")));
    }
    Err(degree_error(&report).unwrap_or(ParseError::Validation(report)))
}

struct Renderer<'a> {
    net: &'a RootedNet,
    min_leaf: BTreeMap<VertexId, String>,
    tags: BTreeMap<VertexId, usize>,
    out: String,
}

impl<'a> Renderer<'a> {
    fn new(net: &'a RootedNet) -> Self {
        let mut min_leaf = BTreeMap::new();
        if let Some(order) = net.topological_order() {
            for &v in order.iter().rev() {
                let m = net
                    .children(v)
                    .filter_map(|c| min_leaf.get(&c).cloned())
                    .chain(net.label(v).map(str::to_string))
                    .min()
                    .unwrap_or_default();
                min_leaf.insert(v, m);
            }
        }
        Renderer {
            net,
            min_leaf,
            tags: BTreeMap::new(),
            out: String::new(),
        }
    }

    /// Tag-free unfolding, used only to break ties between children.
    fn unfold(&self, v: VertexId, out: &mut String) {
        let kids: Vec<VertexId> = self.net.children(v).collect();
        if !kids.is_empty() {
            let mut parts: Vec<String> = kids
                .iter()
                .map(|&c| {
                    let mut s = String::new();
                    self.unfold(c, &mut s);
                    s
                })
                .collect();
            parts.sort();
            out.push('(');
            out.push_str(&parts.join(","));
            out.push(')');
        }
        if let Some(l) = self.net.label(v) {
            out.push_str(l);
        }
        if self.net.in_degree(v) > 1 {
            out.push('#');
        }
    }

    fn ordered_children(&self, v: VertexId) -> Vec<VertexId> {
        let mut kids: Vec<VertexId> = self.net.children(v).collect();
        kids.sort_by(|&a, &b| {
            self.min_leaf[&a].cmp(&self.min_leaf[&b]).then_with(|| {
                let (mut sa, mut sb) = (String::new(), String::new());
                self.unfold(a, &mut sa);
                self.unfold(b, &mut sb);
                sa.cmp(&sb).then(a.cmp(&b))
            })
        });
        kids
    }

    fn render(&mut self, v: VertexId) {
        let hybrid = self.net.in_degree(v) > 1;
        if hybrid {
            if let Some(&k) = self.tags.get(&v) {
                self.out.push_str(&format!("#H{k}"));
                return;
            }
            let k = self.tags.len() + 1;
            self.tags.insert(v, k);
        }
        let kids = self.ordered_children(v);
        if !kids.is_empty() {
            self.out.push('(');
            for (i, c) in kids.into_iter().enumerate() {
                if i > 0 {
                    self.out.push(',');
                }
                self.render(c);
            }
            self.out.push(')');
        }
        if let Some(l) = self.net.label(v) {
            self.out.push_str(l);
        }
        if hybrid {
            self.out.push_str(&format!("#H{}", self.tags[&v]));
        }
    }
}

/// Canonical extended Newick. Children are ordered by smallest leaf label
/// below them; hybrid tags are numbered in order of first appearance.
pub fn serialize_enewick(net: &RootedNet) -> String {
    let mut r = Renderer::new(net);
    if let Some(root) = net.root() {
        r.render(root);
    }
    r.out.push(';');
    r.out
}

/// Parses a Newick tree as an unrooted binary tree, suppressing a degree-2 root.
pub fn parse_newick_tree(text: &str) -> Result<UndirectedNet, ParseError> {
    let root = parse_tree_text(text)?;
    let mut net = UndirectedNet::new();
    let mut stack: Vec<(&Node, Option<VertexId>)> = vec![(&root, None)];
    let mut root_vertex = None;
    while let Some((node, parent)) = stack.pop() {
        if node.hybrid.is_some() {
            return Err(ParseError::syntax(
                node.line,
                node.col,
                "hybrid tag in a tree",
            ));
        }
        let deg = node.children.len() + usize::from(parent.is_some());
        let is_root = parent.is_none();
        if !node.children.is_empty() && deg != 3 && !(is_root && deg == 2) {
            return Err(ParseError::NotBinary {
                line: node.line,
                col: node.col,
                degree: deg,
            });
        }
        let v = net.add_vertex();
        if let Some(p) = parent {
            net.add_edge(p, v).expect("fresh vertex");
        } else {
            root_vertex = Some(v);
        }
        if node.children.is_empty() {
            if let Some(l) = &node.label {
                if net.set_label(v, l).is_err() {
                    return Err(ParseError::syntax(
                        node.line,
                        node.col,
                        format!("duplicate label {l:?}"),
                    ));
                }
            }
        }
        for c in node.children.iter().rev() {
            stack.push((c, Some(v)));
        }
    }
    let r = root_vertex.expect("root node exists");
    if net.degree(r) == 2 {
        net.suppress_mut(r)
            .map_err(|e| ParseError::Degree(e.to_string()))?;
    }
    let report = validate_unrooted(&net);
    if !report.is_valid() {
        return Err(ParseError::Validation(report));
    }
    Ok(net)
}

/// Canonical Newick for an unrooted tree: hung from the neighbour of the
/// smallest leaf, children ordered by smallest leaf label.
pub fn serialize_newick_tree(net: &UndirectedNet) -> String {
    let Some((first, _)) = net
        .labels()
        .min_by(|a, b| a.1.cmp(b.1))
    else {
        return ";".to_string();
    };
    let top = net.neighbors(first).next().unwrap_or(first);
    let mut out = String::new();
    if net.is_leaf(top) {
        let mut ls: Vec<&str> = net.labels().map(|(_, l)| l).collect();
        ls.sort();
        out.push('(');
        out.push_str(&ls.join(","));
        out.push(')');
    } else {
        render_tree(net, top, None, &mut out);
    }
    out.push(';');
    out
}

fn min_label_below(net: &UndirectedNet, v: VertexId, from: Option<VertexId>) -> String {
    let mut best: Option<String> = None;
    let mut stack = vec![(v, from)];
    while let Some((x, p)) = stack.pop() {
        if let Some(l) = net.label(x) {
            if best.as_deref().is_none_or(|b| l < b) {
                best = Some(l.to_string());
            }
        }
        for w in net.neighbors(x) {
            if Some(w) != p {
                stack.push((w, Some(x)));
            }
        }
    }
    best.unwrap_or_default()
}

fn render_tree(net: &UndirectedNet, v: VertexId, parent: Option<VertexId>, out: &mut String) {
    let mut kids: Vec<(String, VertexId)> = net
        .neighbors(v)
        .filter(|&w| Some(w) != parent)
        .map(|w| (min_label_below(net, w, Some(v)), w))
        .collect();
    if kids.is_empty() {
        out.push_str(net.label(v).unwrap_or(""));
        return;
    }
    kids.sort();
    out.push('(');
    for (i, (_, w)) in kids.into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        render_tree(net, w, Some(v), out);
    }
    out.push(')');
}
