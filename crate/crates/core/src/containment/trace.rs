use std::collections::BTreeSet;
use std::fmt;

use super::rules::{apply_reduction, RuleCase, Verdict};
use super::splits::{branch_on_cut_edge, conflicting_split};
use super::{ContainError, Instance};
use crate::io::ParseError;
use crate::net::{Edge, Split, UndirectedNet, VertexId};

/// One line of a `TCTRACE/1` document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    SplitConflict { net_split: Split, tree_split: Split },
    Branch(Edge),
    Rule { rule: u8, case: RuleCase, leaves: Vec<String> },
    Elim(Edge),
    Verdict(bool),
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SplitConflict { net_split, tree_split } => write!(f, "SPLIT-CONFLICT {net_split} {tree_split}"),
            Self::Branch(e) => write!(f, "BRANCH {} {}", e.lo(), e.hi()),
            Self::Rule { rule, case, leaves } => {
                write!(f, "RULE {rule} {case}")?;
                for l in leaves {
                    write!(f, " {l}")?;
                }
                Ok(())
            }
            Self::Elim(e) => write!(f, "ELIM {} {}", e.lo(), e.hi()),
            Self::Verdict(true) => f.write_str("YES"),
            Self::Verdict(false) => f.write_str("NO"),
        }
    }
}

/// Events of one run in pre-order: a `BRANCH` is followed by the events of
/// its first sub-instance and then those of its second. The final event is
/// the verdict.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    pub events: Vec<TraceEvent>,
}

impl Trace {
    pub fn branch_count(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, TraceEvent::Branch(_))).count()
    }

    pub fn elimination_count(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, TraceEvent::Elim(_))).count()
    }

    pub fn eliminated_edges(&self) -> Vec<Edge> {
        self.events
            .iter()
            .filter_map(|e| match e {
                TraceEvent::Elim(e) => Some(*e),
                _ => None,
            })
            .collect()
    }
}

pub fn serialize_trace(trace: &Trace) -> String {
    let mut out = String::from("TCTRACE/1\n");
    for e in &trace.events {
        out.push_str(&e.to_string());
        out.push('\n');
    }
    out
}

fn parse_split(line: usize, text: &str) -> Result<Split, ParseError> {
    let (a, b) = text
        .split_once('|')
        .ok_or_else(|| ParseError::syntax(line, 1, format!("split {text:?} lacks '|'")))?;
    let side = |s: &str| -> BTreeSet<String> { s.split(',').filter(|l| !l.is_empty()).map(str::to_string).collect() };
    Split::new(side(a), side(b)).ok_or_else(|| ParseError::syntax(line, 1, format!("{text:?} is not a split")))
}

pub fn parse_trace(text: &str) -> Result<Trace, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, "TCTRACE/1")) => {}
        Some((n, other)) => return Err(ParseError::syntax(n, 1, format!("expected TCTRACE/1, found {other:?}"))),
        None => return Err(ParseError::syntax(1, 1, "empty trace")),
    }
    let mut trace = Trace::default();
    for (n, line) in lines {
        let words: Vec<&str> = line.split_whitespace().collect();
        let bad = |msg: &str| ParseError::syntax(n, 1, format!("{msg}: {line:?}"));
        let id = |s: &str| s.parse::<u32>().map(VertexId).map_err(|_| bad("bad vertex id"));
        let event = match words.as_slice() {
            ["SPLIT-CONFLICT", a, b] => TraceEvent::SplitConflict {
                net_split: parse_split(n, a)?,
                tree_split: parse_split(n, b)?,
            },
            ["BRANCH", a, b] => TraceEvent::Branch(Edge::new(id(a)?, id(b)?)),
            ["ELIM", a, b] => TraceEvent::Elim(Edge::new(id(a)?, id(b)?)),
            ["RULE", k, case, rest @ ..] => TraceEvent::Rule {
                rule: k.parse().ok().filter(|k| (1..=4).contains(k)).ok_or_else(|| bad("bad rule number"))?,
                case: case.parse().map_err(|m: String| bad(&m))?,
                leaves: rest.iter().map(|s| s.to_string()).collect(),
            },
            ["YES"] => TraceEvent::Verdict(true),
            ["NO"] => TraceEvent::Verdict(false),
            _ => return Err(bad("unknown event")),
        };
        trace.events.push(event);
    }
    Ok(trace)
}

/// One edge elimination seen during replay.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedStep {
    pub tree: UndirectedNet,
    pub before: UndirectedNet,
    pub after: UndirectedNet,
    pub rule: u8,
    pub case: RuleCase,
    pub eliminated: Edge,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Replay {
    pub verdict: bool,
    /// Every network the run looked at, in order.
    pub networks: Vec<UndirectedNet>,
    pub steps: Vec<ReducedStep>,
}

/// Re-executes a trace against its instance, checking each event against a
/// fresh evaluation of the corresponding step.
pub fn replay_trace(tree: &UndirectedNet, net: &UndirectedNet, trace: &Trace) -> Result<Replay, ContainError> {
    let bad = |msg: String| ContainError::BadTrace(msg);
    let mut events = trace.events.iter();
    let mut next = || events.next().ok_or_else(|| bad("trace ends early".into()));
    let mut pending = vec![Instance { tree: tree.clone(), net: net.clone() }];
    let mut replay = Replay { verdict: true, ..Replay::default() };

    'instances: while let Some(mut cur) = pending.pop() {
        loop {
            replay.networks.push(cur.net.clone());
            match next()? {
                TraceEvent::SplitConflict { net_split, tree_split } => {
                    let found = conflicting_split(&cur.tree, &cur.net);
                    if found.as_ref() != Some(&(net_split.clone(), tree_split.clone())) {
                        return Err(bad(format!("recorded conflict {net_split} / {tree_split} not found")));
                    }
                    replay.verdict = false;
                    break 'instances;
                }
                TraceEvent::Branch(e) => {
                    let (first, second) = branch_on_cut_edge(&cur.tree, &cur.net, *e)?;
                    pending.push(second);
                    cur = first;
                }
                TraceEvent::Rule { rule, case, leaves } => {
                    let out = apply_reduction(&cur.tree, &cur.net)?;
                    if out.rule != *rule || out.case != *case || &out.leaves != leaves {
                        return Err(bad(format!(
                            "recorded rule {rule} {case} but rule {} {} applies",
                            out.rule, out.case
                        )));
                    }
                    match out.verdict {
                        Verdict::Yes => continue 'instances,
                        Verdict::No => {
                            replay.verdict = false;
                            break 'instances;
                        }
                        Verdict::Reduced => {
                            let e = out.eliminated().expect("reduced outcomes name their edge");
                            match next()? {
                                TraceEvent::Elim(f) if *f == e => {}
                                other => return Err(bad(format!("expected ELIM {e}, found {other}"))),
                            }
                            let after = out.reduced_net.expect("reduced outcomes carry a network");
                            replay.steps.push(ReducedStep {
                                tree: cur.tree.clone(),
                                before: cur.net.clone(),
                                after: after.clone(),
                                rule: *rule,
                                case: *case,
                                eliminated: e,
                            });
                            cur.net = after;
                        }
                    }
                }
                other => return Err(bad(format!("unexpected {other} inside an instance"))),
            }
        }
    }
    match next()? {
        TraceEvent::Verdict(v) if *v == replay.verdict => {}
        other => return Err(bad(format!("expected verdict {}, found {other}", replay.verdict))),
    }
    if let Some(extra) = events.next() {
        return Err(bad(format!("events after the verdict: {extra}")));
    }
    Ok(replay)
}
