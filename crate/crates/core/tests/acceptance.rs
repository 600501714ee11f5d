//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed. Built with `harness = false` so that the
//! report is always shown.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use qcut::containment::{
    display_oracle, entangled_path, entangled_paths_bruteforce, is_simple, replay_trace, simple_parts,
    three_cuttable_tc, ContainError,
};
use qcut::cuttable::{is_q_cuttable, is_q_cuttable_bruteforce, is_q_cuttable_via_chain_deletion};
use qcut::fixtures::*;
use qcut::gen::{random_2balanced_cnf, random_containment_instance, random_q_cuttable, random_tree, GenConfig};
use qcut::io::*;
use qcut::net::{labeled_isomorphic, labeled_isomorphic_rooted, validate_rooted, validate_unrooted, UndirectedNet};
use qcut::orient::{cherry_picking_sequence, is_tree_child, replay, tree_child_orient_2cuttable, underlying_unrooted};
use qcut::sat::{build_n_phi, build_u_phi, extract_assignment, sat_bruteforce, Assignment};

type Verdict = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Networks from `random_q_cuttable` cycling through leaf counts,
/// reticulation numbers and cuttability targets, filtered by `keep`.
fn generated(count: usize, q_targets: &[usize], max_leaves: usize, keep: impl Fn(&UndirectedNet) -> bool) -> Vec<UndirectedNet> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count {
        let lc = 3 + (seed % (max_leaves as u64 - 2)) as usize;
        let r = (seed / 7 % 7) as usize;
        let q = q_targets[(seed / 3) as usize % q_targets.len()];
        seed += 1;
        let Ok(net) = random_q_cuttable(&GenConfig::new(seed, lc, r, q)) else { continue };
        if net.leaf_count() <= max_leaves && keep(&net) {
            out.push(net);
        }
        assert!(seed < 1_000_000, "generator starved");
    }
    out
}

fn recognizer_equivalence() -> Verdict {
    let start = Instant::now();
    let nets = generated(1000, &[1, 2, 3], 12, |n| n.reticulation_number() <= 6);
    let mut disagreements = 0;
    for net in &nets {
        for q in 1..=5 {
            let a = is_q_cuttable(net, q).map_err(|e| e.to_string())?.is_cuttable;
            let b = is_q_cuttable_via_chain_deletion(net, q).map_err(|e| e.to_string())?;
            let c = is_q_cuttable_bruteforce(net, q).map_err(|e| e.to_string())?;
            if a != b || a != c {
                disagreements += 1;
            }
        }
    }
    let took = start.elapsed();
    let max_r = nets.iter().map(UndirectedNet::reticulation_number).max().unwrap_or(0);
    check(disagreements == 0, || format!("{disagreements} disagreements"))?;
    check(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!("{} networks (r up to {max_r}) x q=1..5, 0 disagreements, {took:.2?}", nets.len()))
}

fn two_cuttable_nets(count: usize, max_leaves: usize) -> Vec<UndirectedNet> {
    generated(count, &[2, 3], max_leaves, |n| {
        n.reticulation_number() > 0 && is_q_cuttable(n, 2).is_ok_and(|r| r.is_cuttable)
    })
}

fn constructive_orientation() -> Verdict {
    let nets = two_cuttable_nets(200, 12);
    for (i, net) in nets.iter().enumerate() {
        let rooted = tree_child_orient_2cuttable(net).map_err(|e| format!("net {i}: {e}"))?;
        check(validate_rooted(&rooted).is_valid(), || format!("net {i}: invalid output"))?;
        check(is_tree_child(&rooted), || format!("net {i}: not tree-child"))?;
        let back = underlying_unrooted(&rooted).map_err(|e| e.to_string())?;
        check(labeled_isomorphic(&back, net).unwrap_or(false), || format!("net {i}: not isomorphic"))?;
        check(rooted.reticulation_number() == net.reticulation_number(), || format!("net {i}: r changed"))?;
        check(net.reticulation_number() < net.leaf_count(), || format!("net {i}: r >= |X|"))?;
    }
    Ok(format!("{} networks oriented, all valid, tree-child, isomorphic, r preserved and r <= |X|-1", nets.len()))
}

fn cherry_picking() -> Verdict {
    let nets = two_cuttable_nets(150, 8);
    for (i, net) in nets.iter().enumerate() {
        let seq = cherry_picking_sequence(net)
            .map_err(|e| format!("net {i}: {e}"))?
            .ok_or_else(|| format!("net {i}: no cherry-picking sequence"))?;
        let end = replay(net, &seq).map_err(|e| format!("net {i}: {e}"))?;
        check(end.vertex_count() == 1, || format!("net {i}: replay ends with {} vertices", end.vertex_count()))?;
    }
    Ok(format!("{} networks with |X| <= 8 reduce to a single vertex", nets.len()))
}

struct TcRun {
    tree: UndirectedNet,
    net: UndirectedNet,
    trace: qcut::containment::Trace,
}

fn containment_instances() -> Vec<(UndirectedNet, UndirectedNet)> {
    (0..240u64)
        .map(|seed| random_containment_instance(seed, 8, 5, seed % 2 == 0).expect("instance"))
        .collect()
}

fn containment_vs_oracle(runs: &mut Vec<TcRun>) -> Verdict {
    let mut times = Vec::new();
    let mut yes = 0;
    for (i, (tree, net)) in containment_instances().into_iter().enumerate() {
        let start = Instant::now();
        let (verdict, trace) = three_cuttable_tc(&tree, &net).map_err(|e| format!("instance {i}: {e}"))?;
        times.push(start.elapsed());
        let oracle = display_oracle(&tree, &net).map_err(|e| format!("instance {i}: {e}"))?;
        check(verdict == oracle.is_some(), || format!("instance {i}: tc says {verdict}, oracle disagrees"))?;
        yes += usize::from(verdict);
        runs.push(TcRun { tree, net, trace });
    }
    times.sort();
    let median = times[times.len() / 2];
    let max_r = runs.iter().map(|r| r.net.reticulation_number()).max().unwrap_or(0);
    check(median < Duration::from_millis(50), || format!("median {median:?}"))?;
    Ok(format!(
        "{} instances ({yes} yes, r up to {max_r}), 100% agreement, median {median:.2?}",
        runs.len()
    ))
}

fn reduction_soundness(runs: &[TcRun]) -> Verdict {
    let (mut networks, mut steps, mut skipped) = (0, 0, 0);
    for (i, run) in runs.iter().enumerate() {
        let replayed = replay_trace(&run.tree, &run.net, &run.trace).map_err(|e| format!("instance {i}: {e}"))?;
        for n in &replayed.networks {
            check(validate_unrooted(n).is_valid(), || format!("instance {i}: invalid intermediate network"))?;
            check(is_q_cuttable(n, 3).is_ok_and(|r| r.is_cuttable), || {
                format!("instance {i}: intermediate network is not 3-cuttable")
            })?;
            networks += 1;
        }
        for step in &replayed.steps {
            let before = display_oracle(&step.tree, &step.before);
            let after = display_oracle(&step.tree, &step.after);
            match (before, after) {
                (Ok(b), Ok(a)) => check(b.is_some() == a.is_some(), || {
                    format!("instance {i}: rule {} {} changed the answer", step.rule, step.case)
                })?,
                (Err(ContainError::BudgetExceeded(_)), _) | (_, Err(ContainError::BudgetExceeded(_))) => skipped += 1,
                (Err(e), _) | (_, Err(e)) => return Err(format!("instance {i}: {e}")),
            }
            steps += 1;
        }
    }
    Ok(format!(
        "{networks} intermediate networks valid and 3-cuttable; {steps} eliminations preserve the answer ({skipped} over budget)"
    ))
}

fn sat_worked_instance() -> Verdict {
    let start = Instant::now();
    let cnf = parse_dimacs_cnf(WORKED_PHI_DIMACS).map_err(|e| e.to_string())?;
    let (u, gmap) = build_u_phi(&cnf).map_err(|e| e.to_string())?;
    check(validate_unrooted(&u).is_valid(), || "reduction network is invalid".into())?;
    check(u.leaf_count() == 64, || format!("{} leaves", u.leaf_count()))?;
    let beta: Assignment = "TFF".parse()?;
    let n = build_n_phi(&cnf, &beta).map_err(|e| e.to_string())?;
    check(is_tree_child(&n), || "orientation is not tree-child".into())?;
    let got = extract_assignment(&n, &gmap).map_err(|e| e.to_string())?;
    check(cnf.is_satisfied_by(&got), || format!("extracted {got} does not satisfy"))?;
    let took = start.elapsed();
    check(took < Duration::from_secs(1), || format!("took {took:?}"))?;
    Ok(format!("64 leaves, TFF orientation tree-child, extracted {got} satisfies, {took:.2?}"))
}

fn sat_round_trip() -> Verdict {
    let (mut instances, mut satisfiable) = (0, 0);
    for seed in 0..40u64 {
        for n in [3, 6, 9] {
            let cnf = random_2balanced_cnf(n, seed).map_err(|e| e.to_string())?;
            instances += 1;
            let Some(beta) = sat_bruteforce(&cnf).map_err(|e| e.to_string())? else { continue };
            satisfiable += 1;
            let rooted = build_n_phi(&cnf, &beta).map_err(|e| format!("n={n} seed={seed}: {e}"))?;
            check(is_tree_child(&rooted), || format!("n={n} seed={seed}: not tree-child"))?;
            let (_, gmap) = build_u_phi(&cnf).map_err(|e| e.to_string())?;
            let got = extract_assignment(&rooted, &gmap).map_err(|e| format!("n={n} seed={seed}: {e}"))?;
            check(cnf.is_satisfied_by(&got), || format!("n={n} seed={seed}: {got} does not satisfy"))?;
        }
    }
    check(satisfiable >= 100, || format!("only {satisfiable} satisfiable instances"))?;
    Ok(format!("{instances} instances, {satisfiable} satisfiable, all round trips satisfy"))
}

fn simple_three_cuttable_fixtures() -> Vec<UndirectedNet> {
    let named = [square(), two_squares(), embedding_example_net(), quartet(), k4_fully_subdivided(), chorded_hexagon()];
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let add = |n: UndirectedNet, seen: &mut BTreeSet<String>, out: &mut Vec<UndirectedNet>| {
        if n.reticulation_number() > 0
            && is_simple(&n)
            && is_q_cuttable(&n, 3).is_ok_and(|r| r.is_cuttable)
            && seen.insert(serialize_upn(&n))
        {
            out.push(n);
        }
    };
    for n in named {
        for part in simple_parts(&n).expect("fixtures are valid") {
            add(part, &mut seen, &mut out);
        }
    }
    let mut seed = 0;
    while out.len() < 120 {
        let (_, net) = random_containment_instance(seed, 8, 5, true).expect("instance");
        for part in simple_parts(&net).expect("generated networks are valid") {
            add(part, &mut seen, &mut out);
        }
        seed += 1;
    }
    out
}

fn entangled_uniqueness() -> Verdict {
    let nets = simple_three_cuttable_fixtures();
    let mut pairs = 0;
    for (i, net) in nets.iter().enumerate() {
        let leaves: Vec<_> = net.leaves().collect();
        for (k, &a) in leaves.iter().enumerate() {
            for &b in &leaves[k + 1..] {
                let all = entangled_paths_bruteforce(net, a, b, 1_000_000).map_err(|e| e.to_string())?;
                check(all.len() <= 1, || format!("fixture {i}: {} entangled {a}-{b} paths", all.len()))?;
                check(entangled_path(net, a, b) == all.first().cloned(), || {
                    format!("fixture {i}: entangled_path({a},{b}) differs from enumeration")
                })?;
                pairs += 1;
            }
        }
    }
    check(nets.len() >= 100, || format!("only {} fixtures", nets.len()))?;
    Ok(format!("{} simple 3-cuttable fixtures, {pairs} leaf pairs, at most one entangled path each", nets.len()))
}

fn parser_round_trips() -> Verdict {
    let mut nets = vec![
        two_leaf(),
        quartet(),
        square(),
        two_squares(),
        theta_two_leaves(),
        chorded_hexagon(),
        k4_fully_subdivided(),
        k4_two_leaves(),
        embedding_example_net(),
    ];
    nets.extend(generated(60, &[1, 2, 3], 12, |_| true));
    for (i, n) in nets.iter().enumerate() {
        let text = serialize_upn(n);
        let back = parse_upn(&text).map_err(|e| format!("upn {i}: {e}"))?;
        check(labeled_isomorphic(&back, n).unwrap_or(false), || format!("upn {i}: not isomorphic"))?;
        check(serialize_upn(&back) == text, || format!("upn {i}: serialization not byte-stable"))?;
    }

    let mut rooted: Vec<_> = two_cuttable_nets(40, 12)
        .iter()
        .map(|n| tree_child_orient_2cuttable(n).expect("2-cuttable"))
        .collect();
    let cnf = parse_dimacs_cnf(WORKED_PHI_DIMACS).map_err(|e| e.to_string())?;
    rooted.push(build_n_phi(&cnf, &"TFF".parse()?).map_err(|e| e.to_string())?);
    for (i, r) in rooted.iter().enumerate() {
        let text = serialize_enewick(r);
        let back = parse_enewick(&text).map_err(|e| format!("enewick {i}: {e}"))?;
        check(labeled_isomorphic_rooted(&back, r).unwrap_or(false), || format!("enewick {i}: not isomorphic"))?;
        check(serialize_enewick(&back) == text, || format!("enewick {i}: serialization not byte-stable"))?;
    }

    let mut trees: Vec<_> = [EMBEDDING_EXAMPLE_TREE, CONFLICT_EXAMPLE_TREE]
        .iter()
        .map(|t| parse_newick_tree(t).expect("fixture tree"))
        .collect();
    for seed in 0..60 {
        let labels: Vec<String> = (0..3 + seed % 10).map(|k| format!("t{k}")).collect();
        trees.push(random_tree(&labels, seed as u64).map_err(|e| e.to_string())?);
    }
    for (i, t) in trees.iter().enumerate() {
        let text = serialize_newick_tree(t);
        let back = parse_newick_tree(&text).map_err(|e| format!("newick {i}: {e}"))?;
        check(labeled_isomorphic(&back, t).unwrap_or(false), || format!("newick {i}: not isomorphic"))?;
        check(serialize_newick_tree(&back) == text, || format!("newick {i}: serialization not byte-stable"))?;
    }

    let mut cnfs = vec![cnf];
    for seed in 0..30 {
        cnfs.push(random_2balanced_cnf(3 * (1 + seed as usize % 3), seed).map_err(|e| e.to_string())?);
    }
    for (i, c) in cnfs.iter().enumerate() {
        let text = serialize_dimacs_cnf(c);
        let back = parse_dimacs_cnf(&text).map_err(|e| format!("dimacs {i}: {e}"))?;
        check(&back == c, || format!("dimacs {i}: round trip changed the formula"))?;
        check(serialize_dimacs_cnf(&back) == text, || format!("dimacs {i}: serialization not byte-stable"))?;
    }
    Ok(format!(
        "{} UPN, {} eNewick, {} Newick, {} DIMACS inputs round-trip byte-stably",
        nets.len(),
        rooted.len(),
        trees.len(),
        cnfs.len()
    ))
}

fn main() {
    let mut runs = Vec::new();
    let results: Vec<(&str, Verdict)> = vec![
        ("1 recognizer equivalence", recognizer_equivalence()),
        ("2 constructive tree-child orientation", constructive_orientation()),
        ("3 cherry-picking sequences", cherry_picking()),
        ("4 tree containment vs embedding oracle", containment_vs_oracle(&mut runs)),
        ("5 reduction soundness", reduction_soundness(&runs)),
        ("6 SAT reduction on the worked formula", sat_worked_instance()),
        ("7 SAT round trip", sat_round_trip()),
        ("8 entangled path uniqueness", entangled_uniqueness()),
        ("9 parser round trips", parser_round_trips()),
    ];
    let mut failed = 0;
    for (name, verdict) in &results {
        match verdict {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
