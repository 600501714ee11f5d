use proptest::prelude::*;

use qcut::containment::{
    branch_on_cut_edge, display_oracle, entangled_path, find_pendant_structures, non_trivial_cut_edges,
    parse_trace, replay_trace, serialize_trace, simple_parts, three_cuttable_tc, verify_embedding,
};
use qcut::cuttable::{is_q_cuttable, is_q_cuttable_via_chain_deletion, max_cuttability};
use qcut::gen::{
    default_labels, random_2balanced_cnf, random_containment_instance, random_q_cuttable, random_tree,
    sample_displayed_tree, GenConfig,
};
use qcut::io::*;
use qcut::net::{cut_edges, labeled_isomorphic, labeled_isomorphic_rooted, UndirectedNet};
use qcut::orient::{is_tree_child, tree_child_orient_2cuttable, underlying_unrooted};
use qcut::sat::{build_n_phi, build_u_phi, extract_assignment, sat_bruteforce, validate_2balanced};

fn net_strategy(q: usize) -> impl Strategy<Value = UndirectedNet> {
    (any::<u64>(), 3usize..10, 0usize..5)
        .prop_filter_map("generator gave up", move |(seed, lc, r)| {
            random_q_cuttable(&GenConfig::new(seed, lc, r, q)).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_nets_meet_their_target(seed in any::<u64>(), lc in 3usize..10, r in 0usize..5, q in 1usize..4) {
        if let Ok(net) = random_q_cuttable(&GenConfig::new(seed, lc, r, q)) {
            prop_assert_eq!(net.reticulation_number(), r);
            prop_assert!(is_q_cuttable(&net, q).unwrap().is_cuttable);
        }
    }

    #[test]
    fn recognizers_agree(net in net_strategy(1), q in 1usize..6) {
        prop_assert_eq!(
            is_q_cuttable(&net, q).unwrap().is_cuttable,
            is_q_cuttable_via_chain_deletion(&net, q).unwrap()
        );
    }

    #[test]
    fn cuttability_is_monotone(net in net_strategy(1), q in 1usize..5) {
        if is_q_cuttable(&net, q + 1).unwrap().is_cuttable {
            prop_assert!(is_q_cuttable(&net, q).unwrap().is_cuttable);
        }
        if let Some(best) = max_cuttability(&net) {
            prop_assert_eq!(is_q_cuttable(&net, best + 1).unwrap().is_cuttable, false);
        }
    }

    #[test]
    fn upn_round_trip(net in net_strategy(1)) {
        let text = serialize_upn(&net);
        let back = parse_upn(&text).unwrap();
        prop_assert_eq!(serialize_upn(&back), text);
        prop_assert!(labeled_isomorphic(&back, &net).unwrap());
    }

    #[test]
    fn newick_round_trip(seed in any::<u64>(), n in 2usize..14) {
        let tree = random_tree(&default_labels(n), seed).unwrap();
        let text = serialize_newick_tree(&tree);
        let back = parse_newick_tree(&text).unwrap();
        prop_assert_eq!(serialize_newick_tree(&back), text);
        prop_assert!(labeled_isomorphic(&back, &tree).unwrap());
    }

    #[test]
    fn constructive_orientation_is_sound(net in net_strategy(2)) {
        let rooted = tree_child_orient_2cuttable(&net).unwrap();
        prop_assert!(is_tree_child(&rooted));
        prop_assert!(labeled_isomorphic(&underlying_unrooted(&rooted).unwrap(), &net).unwrap());
        let text = serialize_enewick(&rooted);
        prop_assert!(labeled_isomorphic_rooted(&parse_enewick(&text).unwrap(), &rooted).unwrap());
    }

    #[test]
    fn displayed_trees_are_displayed(net in net_strategy(1), seed in any::<u64>()) {
        let tree = sample_displayed_tree(&net, seed).unwrap();
        let emb = display_oracle(&tree, &net).unwrap().expect("sampled trees embed");
        prop_assert!(verify_embedding(&tree, &net, &emb).unwrap().is_valid());
    }

    #[test]
    fn containment_matches_oracle(seed in any::<u64>(), displayed in any::<bool>()) {
        let (tree, net) = random_containment_instance(seed, 8, 4, displayed).unwrap();
        let (yes, trace) = three_cuttable_tc(&tree, &net).unwrap();
        prop_assert_eq!(yes, display_oracle(&tree, &net).unwrap().is_some());
        prop_assert!(!displayed || yes);
        prop_assert_eq!(&parse_trace(&serialize_trace(&trace)).unwrap(), &trace);
        prop_assert_eq!(replay_trace(&tree, &net, &trace).unwrap().verdict, yes);
        let steps = trace.branch_count() + trace.elimination_count();
        prop_assert!(steps <= net.edge_count() + non_trivial_cut_edges(&net).len());
    }

    #[test]
    fn branching_partitions_the_leaves(seed in any::<u64>()) {
        let (tree, net) = random_containment_instance(seed, 8, 4, true).unwrap();
        if let Some(&e) = non_trivial_cut_edges(&net).first() {
            let (a, b) = branch_on_cut_edge(&tree, &net, e).unwrap();
            prop_assert_eq!(a.net.leaf_count() + b.net.leaf_count(), net.leaf_count() + 2);
            prop_assert_eq!(a.tree.label_set(), a.net.label_set());
            prop_assert_eq!(b.tree.label_set(), b.net.label_set());
            prop_assert_eq!(a.net.reticulation_number() + b.net.reticulation_number(), net.reticulation_number());
        }
    }

    #[test]
    fn entangled_paths_avoid_inner_cut_vertices(seed in any::<u64>()) {
        let (_, net) = random_containment_instance(seed, 8, 4, true).unwrap();
        for part in simple_parts(&net).unwrap() {
            let cuts = cut_edges(&part);
            let leaves: Vec<_> = part.leaves().collect();
            for (i, &a) in leaves.iter().enumerate() {
                for &b in &leaves[i + 1..] {
                    if let Some(p) = entangled_path(&part, a, b) {
                        prop_assert_eq!((p[0], *p.last().unwrap()), (a, b));
                        // inner vertices only touch cut-edges leading to a or b
                        for &v in &p[1..p.len() - 1] {
                            for e in part.incident_edges(v).filter(|e| cuts.contains(e)) {
                                let w = e.other(v);
                                prop_assert!(w == a || w == b || p.contains(&w));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn trees_have_pendant_structures(seed in any::<u64>(), n in 4usize..16) {
        let tree = random_tree(&default_labels(n), seed).unwrap();
        prop_assert!(find_pendant_structures(&tree).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn satisfying_assignments_round_trip(seed in any::<u64>(), k in 1usize..3) {
        let cnf = random_2balanced_cnf(3 * k, seed).unwrap();
        prop_assert!(validate_2balanced(&cnf).is_valid());
        prop_assert_eq!(parse_dimacs_cnf(&serialize_dimacs_cnf(&cnf)).unwrap(), cnf.clone());
        if let Some(beta) = sat_bruteforce(&cnf).unwrap() {
            let rooted = build_n_phi(&cnf, &beta).unwrap();
            prop_assert!(is_tree_child(&rooted));
            let (u, gmap) = build_u_phi(&cnf).unwrap();
            prop_assert!(labeled_isomorphic(&underlying_unrooted(&rooted).unwrap(), &u).unwrap());
            prop_assert!(cnf.is_satisfied_by(&extract_assignment(&rooted, &gmap).unwrap()));
        }
    }
}
