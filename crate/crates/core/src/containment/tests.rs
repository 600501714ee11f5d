use std::collections::{BTreeMap, BTreeSet};

use super::*;
use crate::cuttable::is_q_cuttable;
use crate::fixtures::*;
use crate::gen::random_containment_instance;
use crate::io::parse_newick_tree;
use crate::net::Split;

fn v(x: u32) -> VertexId {
    VertexId(x)
}

fn e(a: u32, b: u32) -> Edge {
    Edge::new(v(a), v(b))
}

fn tree(s: &str) -> UndirectedNet {
    parse_newick_tree(s).unwrap()
}

fn split(a: &[&str], b: &[&str]) -> Split {
    let side = |s: &[&str]| s.iter().map(|l| l.to_string()).collect();
    Split::new(side(a), side(b)).unwrap()
}

fn three_cuttable(net: &UndirectedNet) -> bool {
    is_q_cuttable(net, 3).unwrap().is_cuttable
}

/// 5-cycle 1..5 with leaves a..e in cyclic order.
fn pentagon() -> UndirectedNet {
    from_edges(
        &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 10)],
        &[(6, "a"), (7, "b"), (8, "c"), (9, "d"), (10, "e")],
    )
}

/// The worked embedding of `((a,b),(c,d),(e,f))` into the example network.
fn worked_embedding(t: &UndirectedNet) -> Embedding {
    let leaf = |l: &str| t.vertex_of(l).unwrap();
    let parent = |l: &str| t.neighbors(leaf(l)).next().unwrap();
    let (u1, u3, u4) = (parent("a"), parent("e"), parent("c"));
    let u2 = t.neighbors(u1).find(|&w| !t.is_leaf(w)).unwrap();
    let mut emb = Embedding::default();
    for (tv, nv) in [(u1, 1), (u2, 8), (u3, 7), (u4, 4)] {
        emb.vertex_map.insert(tv, v(nv));
    }
    for (l, nv) in [("a", 11), ("b", 12), ("c", 13), ("d", 14), ("e", 15), ("f", 16)] {
        emb.vertex_map.insert(leaf(l), v(nv));
    }
    let paths: [(VertexId, VertexId, &[u32]); 9] = [
        (u1, leaf("a"), &[1, 11]),
        (u1, leaf("b"), &[1, 2, 12]),
        (u1, u2, &[1, 8]),
        (u2, u3, &[8, 7]),
        (u2, u4, &[8, 4]),
        (u3, leaf("e"), &[7, 6, 15]),
        (u3, leaf("f"), &[7, 16]),
        (u4, leaf("c"), &[4, 3, 13]),
        (u4, leaf("d"), &[4, 5, 14]),
    ];
    for (a, b, p) in paths {
        emb.edge_map.insert(Edge::new(a, b), p.iter().map(|&x| v(x)).collect());
    }
    emb
}

#[test]
fn worked_embedding_satisfies_all_properties() {
    let (t, u) = (tree(EMBEDDING_EXAMPLE_TREE), embedding_example_net());
    let emb = worked_embedding(&t);
    let check = verify_embedding(&t, &u, &emb).unwrap();
    assert!(check.is_valid(), "{:?}", check.failures);
    // {2,3} and {5,6} stay unused
    assert_eq!(emb.used_edges().len(), 13);
}

#[test]
fn worked_embedding_paths_are_entangled() {
    let (t, u) = (tree(EMBEDDING_EXAMPLE_TREE), embedding_example_net());
    for p in worked_embedding(&t).edge_map.values() {
        assert!(is_entangled(&u, p), "{p:?}");
    }
}

#[test]
fn broken_embeddings_name_the_violated_property() {
    let (t, u) = (tree(EMBEDDING_EXAMPLE_TREE), embedding_example_net());
    let base = worked_embedding(&t);

    // reroute u3-e through 8 so that it reuses the edge {8,7}
    let mut shared = base.clone();
    let u3 = t.neighbors(t.vertex_of("e").unwrap()).next().unwrap();
    let key = Edge::new(u3, t.vertex_of("e").unwrap());
    shared.edge_map.insert(key, vec![v(8), v(7), v(6), v(15)]);
    let bad = verify_embedding(&t, &u, &shared).unwrap().violated();
    assert!(bad.contains(&EmbeddingProperty::PathEndpoints) || bad.contains(&EmbeddingProperty::EdgeDisjoint));

    let mut swapped = base.clone();
    swapped.vertex_map.insert(t.vertex_of("a").unwrap(), v(12));
    let bad = verify_embedding(&t, &u, &swapped).unwrap().violated();
    assert!(bad.contains(&EmbeddingProperty::LeafFixed));

    let mut dup = base;
    let u4 = t.neighbors(t.vertex_of("c").unwrap()).next().unwrap();
    dup.vertex_map.insert(u4, v(8));
    let bad = verify_embedding(&t, &u, &dup).unwrap().violated();
    assert!(bad.contains(&EmbeddingProperty::Injective));
}

#[test]
fn shared_edge_violates_disjointness() {
    // a and b both routed over {1,2} of the square, with the cherry root on 1
    let u = square();
    let t = tree("((a,b),c,d);");
    let leaf = |l: &str| t.vertex_of(l).unwrap();
    let p = t.neighbors(leaf("a")).next().unwrap();
    let q = t.neighbors(leaf("c")).next().unwrap();
    let mut emb = Embedding::default();
    for (tv, nv) in [(p, 2), (q, 3), (leaf("a"), 5), (leaf("b"), 6), (leaf("c"), 7), (leaf("d"), 8)] {
        emb.vertex_map.insert(tv, v(nv));
    }
    for (a, b, path) in [
        (p, leaf("a"), vec![2, 1, 5]),
        (p, leaf("b"), vec![2, 6]),
        (p, q, vec![2, 1, 4, 3]),
        (q, leaf("c"), vec![3, 7]),
        (q, leaf("d"), vec![3, 4, 8]),
    ] {
        emb.edge_map.insert(Edge::new(a, b), path.into_iter().map(v).collect());
    }
    let bad = verify_embedding(&t, &u, &emb).unwrap().violated();
    assert_eq!(bad, BTreeSet::from([EmbeddingProperty::EdgeDisjoint]));
    assert_eq!(EmbeddingProperty::EdgeDisjoint.to_string(), "(v)");
}

#[test]
fn identity_embeds_a_tree_in_itself() {
    let t = quartet();
    let check = verify_embedding(&t, &t, &Embedding::identity(&t)).unwrap();
    assert!(check.is_valid());
    assert!(verify_embedding(&tree("((a,b),c,e);"), &t, &Embedding::identity(&t))
        .is_err_and(|e| e == ContainError::LabelSetMismatch));
}

#[test]
fn conflicting_split_of_two_squares() {
    let u = two_squares();
    let found = conflicting_split(&tree(CONFLICT_EXAMPLE_TREE), &u);
    assert_eq!(
        found,
        Some((split(&["a", "b", "c"], &["d", "f", "g"]), split(&["a", "b", "g"], &["c", "d", "f"])))
    );
    assert_eq!(conflicting_split(&tree("((a,b),c,((d,f),g));"), &u), None);
    let t = tree(EMBEDDING_EXAMPLE_TREE);
    assert_eq!(conflicting_split(&t, &embedding_example_net()), None);
}

#[test]
fn tree_splits_cover_every_edge() {
    let t = tree(EMBEDDING_EXAMPLE_TREE);
    let splits = tree_splits(&t);
    assert_eq!(splits.len(), t.edge_count());
    assert_eq!(splits.iter().filter(|(_, s)| !s.is_trivial()).count(), 3);
}

#[test]
fn fresh_labels_skip_taken_ones() {
    assert_eq!(fresh_label_pair(&BTreeSet::new()), ("x1".into(), "x2".into()));
    let taken = BTreeSet::from(["x1".to_string(), "x3".to_string()]);
    assert_eq!(fresh_label_pair(&taken), ("x2".into(), "x4".into()));
}

#[test]
fn branching_splits_both_inputs() {
    let (t, u) = (tree("((a,b),c,((d,f),g));"), two_squares());
    let (first, second) = branch_on_cut_edge(&t, &u, e(1, 5)).unwrap();
    let labels = |n: &UndirectedNet| n.label_set().into_iter().collect::<Vec<_>>();
    assert_eq!(labels(&first.net), ["a", "b", "c", "x1"]);
    assert_eq!(labels(&second.net), ["d", "f", "g", "x2"]);
    assert_eq!(labels(&first.tree), labels(&first.net));
    assert_eq!(labels(&second.tree), labels(&second.net));
    for part in [&first, &second] {
        assert_eq!(part.net.leaf_count(), 4);
        assert!(is_simple(&part.net));
        assert_eq!(part.tree.reticulation_number(), 0);
    }
    let whole = display_oracle(&t, &u).unwrap().is_some();
    let halves = display_oracle(&first.tree, &first.net).unwrap().is_some()
        && display_oracle(&second.tree, &second.net).unwrap().is_some();
    assert_eq!(whole, halves);
}

#[test]
fn branching_errors() {
    let (t, u) = (tree("((a,b),c,((d,f),g));"), two_squares());
    assert_eq!(branch_on_cut_edge(&t, &u, e(1, 2)), Err(ContainError::NotCutEdge(e(1, 2))));
    assert_eq!(branch_on_cut_edge(&t, &u, e(2, 9)), Err(ContainError::TrivialCutEdge(e(2, 9))));
    assert!(matches!(branch_on_cut_edge(&t, &u, e(40, 41)), Err(ContainError::Net(_))));
    let bad = tree(CONFLICT_EXAMPLE_TREE);
    assert_eq!(branch_on_cut_edge(&bad, &u, e(1, 5)), Err(ContainError::NoMatchingTreeEdge(e(1, 5))));
}

#[test]
fn split_network_keeps_ids() {
    let (lo, hi) = split_network_at(&two_squares(), e(1, 5), "p", "q").unwrap();
    assert!(lo.has_vertex(v(1)) && !lo.has_vertex(v(5)));
    assert!(hi.has_vertex(v(5)) && !hi.has_vertex(v(1)));
    assert!(lo.adjacent(v(1), lo.vertex_of("p").unwrap()));
    assert!(hi.adjacent(v(5), hi.vertex_of("q").unwrap()));
    assert_eq!(lo.edge_count() + hi.edge_count(), two_squares().edge_count() + 1);
}

#[test]
fn simple_parts_are_simple() {
    assert_eq!(simple_parts(&two_squares()).unwrap().len(), 2);
    assert_eq!(simple_parts(&square()).unwrap(), vec![square()]);
    for part in simple_parts(&two_squares()).unwrap() {
        assert!(is_simple(&part));
    }
}

#[test]
fn entangled_path_basics() {
    let u = square();
    assert_eq!(entangled_path(&u, v(1), v(2)), Some(vec![v(1), v(2)]));
    assert_eq!(entangled_path(&u, v(3), v(3)), Some(vec![v(3)]));
    assert_eq!(entangled_path(&u, v(1), v(99)), None);
    // a and c sit opposite each other, so every route passes b's or d's vertex
    assert_eq!(entangled_path(&u, v(5), v(7)), None);
    assert_eq!(entangled_path(&u, v(5), v(6)), Some(vec![v(5), v(1), v(2), v(6)]));
}

#[test]
fn entangled_path_matches_bruteforce() {
    let nets = [square(), two_squares(), embedding_example_net(), pentagon(), chorded_hexagon()];
    let mut checked = 0;
    for net in nets.iter().flat_map(|n| simple_parts(n).unwrap()) {
        if !three_cuttable(&net) {
            continue;
        }
        let leaves: Vec<VertexId> = net.leaves().collect();
        for (i, &a) in leaves.iter().enumerate() {
            for &b in &leaves[i + 1..] {
                let all = entangled_paths_bruteforce(&net, a, b, 100_000).unwrap();
                assert!(all.len() <= 1, "{a} {b}: {all:?}");
                assert_eq!(entangled_path(&net, a, b), all.first().cloned());
                checked += 1;
            }
        }
    }
    assert!(checked > 20);
}

#[test]
fn simple_paths_respects_limit() {
    let u = k4_fully_subdivided();
    let all = simple_paths(&u, v(11), v(16), 10_000).unwrap();
    assert!(all.len() > 1);
    assert!(all.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(simple_paths(&u, v(11), v(16), 2), Err(ContainError::BudgetExceeded(2)));
}

#[test]
fn pendant_structures() {
    assert_eq!(
        find_pendant_structures(&tree("((((a,b),c),d),e);")).unwrap(),
        PendantStructure::Triple { x: "a".into(), y: "b".into(), z: "c".into() }
    );
    let balanced = tree("(((a,b),(c,d)),((e,f),(g,h)));");
    assert!(pendant_triples(&balanced).is_empty());
    let quad = find_pendant_structures(&balanced).unwrap();
    assert_eq!(quad, PendantStructure::Quad { w: "c".into(), x: "a".into(), y: "b".into(), z: "d".into() });
    assert_eq!(quad.to_string(), "((a,b),(c,d))");
    assert_eq!(pendant_quads(&balanced).len(), 2);
    assert_eq!(find_pendant_structures(&tree("(a,b,c);")), Err(ContainError::TooFewLeaves(3)));
}

#[test]
fn rule_one_on_three_leaves() {
    let u = from_edges(
        &[(1, 2), (2, 3), (1, 3), (1, 4), (2, 5), (3, 6)],
        &[(4, "a"), (5, "b"), (6, "c")],
    );
    let out = apply_reduction(&tree("(a,b,c);"), &u).unwrap();
    assert_eq!((out.verdict, out.rule), (Verdict::Yes, 1));
    assert_eq!(out.certificate, Some(Certificate::FewLeaves(3)));
}

#[test]
fn rule_two_eliminates_the_chain_edge() {
    let u = square();
    let out = apply_reduction(&tree("((a,b),c,d);"), &u).unwrap();
    assert_eq!((out.verdict, out.rule, out.case), (Verdict::Reduced, 2, RuleCase::Plain));
    let reduced = out.reduced_net.as_ref().unwrap();
    assert!(reduced.edge_count() < u.edge_count());
    assert_eq!(reduced.reticulation_number(), 0);
    assert!(display_oracle(&tree("((a,b),c,d);"), reduced).unwrap().is_some());
}

#[test]
fn undisplayed_quartet_is_unmatched() {
    let t = tree("((a,c),b,d);");
    let out = apply_reduction(&t, &square()).unwrap();
    assert_eq!((out.verdict, out.rule, out.case), (Verdict::No, 2, RuleCase::Unmatched));
    assert_eq!(display_oracle(&t, &square()).unwrap(), None);
}

#[test]
fn rule_three_without_cherry_path() {
    let t = tree("((a,c),b,(d,e));");
    let u = pentagon();
    let out = apply_reduction(&t, &u).unwrap();
    assert_eq!((out.verdict, out.rule, out.case), (Verdict::No, 3, RuleCase::I));
    assert_eq!(out.certificate, Some(Certificate::MissingPath("a".into(), "c".into())));
    assert_eq!(display_oracle(&t, &u).unwrap(), None);
}

#[test]
fn reduction_preconditions() {
    assert!(matches!(
        apply_reduction(&tree(CONFLICT_EXAMPLE_TREE), &two_squares()),
        Err(ContainError::NotSimple(_))
    ));
    assert_eq!(
        apply_reduction(&tree("((a,b),c,d);"), &chorded_hexagon()),
        Err(ContainError::NotThreeCuttable)
    );
    assert_eq!(apply_reduction(&tree("((a,b),c,e);"), &square()), Err(ContainError::LabelSetMismatch));
}

#[test]
fn rule_case_round_trip() {
    for c in [RuleCase::Plain, RuleCase::I, RuleCase::II, RuleCase::III, RuleCase::IV, RuleCase::Unmatched] {
        assert_eq!(c.to_string().parse::<RuleCase>(), Ok(c));
    }
    assert!("V".parse::<RuleCase>().is_err());
}

#[test]
fn tc_on_worked_examples() {
    let (yes, trace) = three_cuttable_tc(&tree(EMBEDDING_EXAMPLE_TREE), &embedding_example_net()).unwrap();
    assert!(yes);
    assert_eq!(trace.events.last(), Some(&TraceEvent::Verdict(true)));

    let (yes, trace) = three_cuttable_tc(&tree(CONFLICT_EXAMPLE_TREE), &two_squares()).unwrap();
    assert!(!yes);
    assert!(matches!(trace.events[0], TraceEvent::SplitConflict { .. }));
    assert_eq!(trace.events.len(), 2);

    let (yes, trace) = three_cuttable_tc(&tree("((a,b),c,((d,f),g));"), &two_squares()).unwrap();
    assert!(yes);
    assert_eq!(trace.events[0], TraceEvent::Branch(e(1, 5)));
    // eliminations inside each square expose further cut-edges
    assert_eq!(trace.branch_count(), 3);
    assert_eq!(trace.elimination_count(), 2);
}

#[test]
fn tc_rejects_bad_inputs() {
    assert!(matches!(three_cuttable_tc(&square(), &square()), Err(ContainError::NotATree(_))));
    assert_eq!(
        three_cuttable_tc(&tree("((a,b),c,d);"), &chorded_hexagon()),
        Err(ContainError::NotThreeCuttable)
    );
    assert_eq!(three_cuttable_tc(&tree("((a,b),c,e);"), &square()), Err(ContainError::LabelSetMismatch));
}

#[test]
fn tc_agrees_with_oracle_on_random_instances() {
    let mut verdicts = BTreeMap::new();
    for seed in 0..60 {
        let (t, u) = random_containment_instance(seed, 7, 4, seed % 2 == 0).unwrap();
        let (yes, trace) = three_cuttable_tc(&t, &u).unwrap();
        let emb = display_oracle(&t, &u).unwrap();
        assert_eq!(yes, emb.is_some(), "seed {seed}\n{}", serialize_trace(&trace));
        if let Some(emb) = &emb {
            assert!(verify_embedding(&t, &u, emb).unwrap().is_valid());
        }
        if seed % 2 == 0 {
            assert!(yes, "sampled trees are displayed");
        }
        *verdicts.entry(yes).or_insert(0) += 1;

        let replay = replay_trace(&t, &u, &trace).unwrap();
        assert_eq!(replay.verdict, yes);
        assert_eq!(parse_trace(&serialize_trace(&trace)).unwrap(), trace);
        let steps = trace.branch_count() + trace.elimination_count();
        assert!(steps <= u.edge_count() + non_trivial_cut_edges(&u).len());
    }
    assert!(verdicts.get(&false).copied().unwrap_or(0) > 0);
}

#[test]
fn replay_rejects_tampered_traces() {
    let (t, u) = (tree("((a,b),c,((d,f),g));"), two_squares());
    let (_, trace) = three_cuttable_tc(&t, &u).unwrap();
    let mut flipped = trace.clone();
    *flipped.events.last_mut().unwrap() = TraceEvent::Verdict(false);
    assert!(matches!(replay_trace(&t, &u, &flipped), Err(ContainError::BadTrace(_))));
    let mut short = trace.clone();
    short.events.pop();
    assert!(matches!(replay_trace(&t, &u, &short), Err(ContainError::BadTrace(_))));
    let mut wrong = trace;
    wrong.events[0] = TraceEvent::Branch(e(1, 2));
    assert!(replay_trace(&t, &u, &wrong).is_err());
}

#[test]
fn trace_text_format() {
    let trace = Trace {
        events: vec![
            TraceEvent::SplitConflict {
                net_split: split(&["a", "b", "c"], &["d", "f", "g"]),
                tree_split: split(&["a", "b", "g"], &["c", "d", "f"]),
            },
            TraceEvent::Branch(e(1, 5)),
            TraceEvent::Rule { rule: 3, case: RuleCase::III, leaves: vec!["a".into(), "b".into(), "c".into()] },
            TraceEvent::Elim(e(2, 4)),
            TraceEvent::Verdict(false),
        ],
    };
    let text = serialize_trace(&trace);
    assert_eq!(
        text,
        "TCTRACE/1\nSPLIT-CONFLICT a,b,c|d,f,g a,b,g|c,d,f\nBRANCH 1 5\nRULE 3 III a b c\nELIM 2 4\nNO\n"
    );
    assert_eq!(parse_trace(&text).unwrap(), trace);
    assert!(parse_trace("TCTRACE/2\nYES\n").is_err());
    assert!(parse_trace("TCTRACE/1\nRULE 5 - a\n").is_err());
    assert!(parse_trace("TCTRACE/1\nJUMP\n").is_err());
    assert!(parse_trace("").is_err());
}

#[test]
fn oracle_examples() {
    let (t, u) = (tree(EMBEDDING_EXAMPLE_TREE), embedding_example_net());
    let emb = display_oracle(&t, &u).unwrap().unwrap();
    assert!(verify_embedding(&t, &u, &emb).unwrap().is_valid());

    let q = quartet();
    assert!(display_oracle(&q, &q).unwrap().is_some());
    assert!(display_oracle(&tree("((a,c),b,d);"), &q).unwrap().is_none());

    let u = two_squares();
    assert!(display_oracle(&tree(CONFLICT_EXAMPLE_TREE), &u).unwrap().is_none());
    assert!(display_oracle(&tree("((a,b),c,((d,f),g));"), &u).unwrap().is_some());

    assert_eq!(
        display_oracle_with_budget(&t, &embedding_example_net(), 1),
        Err(ContainError::BudgetExceeded(1))
    );
}
