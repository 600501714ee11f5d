use super::rules::{apply_reduction, Verdict};
use super::splits::{branch_on_cut_edge, conflicting_split};
use super::trace::{Trace, TraceEvent};
use super::{non_trivial_cut_edges, require_same_labels, ContainError, Instance};
use crate::cuttable::is_q_cuttable;
use crate::net::{validate_unrooted, UndirectedNet};

pub(crate) fn require_tree(tree: &UndirectedNet) -> Result<(), ContainError> {
    let report = validate_unrooted(tree);
    if !report.is_valid() {
        return Err(ContainError::NotATree(report.to_string()));
    }
    if tree.reticulation_number() != 0 {
        return Err(ContainError::NotATree(format!(
            "reticulation number is {}",
            tree.reticulation_number()
        )));
    }
    Ok(())
}

/// Decides whether a 3-cuttable network displays a tree.
///
/// Conflicting splits answer no at once; non-trivial cut-edges are branched
/// on, lowest first, and both halves must succeed; a simple network is
/// handed to the reduction rules until one of them decides.
pub fn three_cuttable_tc(tree: &UndirectedNet, net: &UndirectedNet) -> Result<(bool, Trace), ContainError> {
    require_tree(tree)?;
    let report = validate_unrooted(net);
    if !report.is_valid() {
        return Err(ContainError::InvalidNetwork(report));
    }
    require_same_labels(tree, net)?;
    if !is_q_cuttable(net, 3).map(|r| r.is_cuttable).unwrap_or(false) {
        return Err(ContainError::NotThreeCuttable);
    }
    let mut trace = Trace::default();
    let instance = Instance { tree: tree.clone(), net: net.clone() };
    let verdict = solve(instance, &mut trace.events)?;
    trace.events.push(TraceEvent::Verdict(verdict));
    Ok((verdict, trace))
}

fn solve(mut cur: Instance, events: &mut Vec<TraceEvent>) -> Result<bool, ContainError> {
    loop {
        if let Some((net_split, tree_split)) = conflicting_split(&cur.tree, &cur.net) {
            events.push(TraceEvent::SplitConflict { net_split, tree_split });
            return Ok(false);
        }
        if let Some(&e) = non_trivial_cut_edges(&cur.net).first() {
            events.push(TraceEvent::Branch(e));
            let (first, second) = branch_on_cut_edge(&cur.tree, &cur.net, e)?;
            return Ok(solve(first, events)? && solve(second, events)?);
        }
        let out = apply_reduction(&cur.tree, &cur.net)?;
        events.push(TraceEvent::Rule { rule: out.rule, case: out.case, leaves: out.leaves.clone() });
        match out.verdict {
            Verdict::Yes => return Ok(true),
            Verdict::No => return Ok(false),
            Verdict::Reduced => {
                let e = out.eliminated().expect("reduced outcomes name their edge");
                events.push(TraceEvent::Elim(e));
                cur.net = out.reduced_net.expect("reduced outcomes carry a network");
            }
        }
    }
}
