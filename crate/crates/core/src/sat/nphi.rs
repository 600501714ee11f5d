use super::gadget::{clause_role, retic_role, variable_role, GadgetKind, ROOT_LEAF, ROOT_ROLE};
use super::{build_u_phi, Assignment, CnfInstance, GadgetMap, SatError};
use crate::net::{validate_rooted, Edge, RootedNet, VertexId};
use crate::orient::{apply_orientation, is_tree_child, OrientationSpec};

/// Forced orientation of a reticulation gadget: reticulations `v2` and `r`.
pub const RETICULATION_ARCS: [(&str, &str); 11] = [
    ("s", "u"),
    ("u", "v"),
    ("u", "v2"),
    ("v", "v2"),
    ("v", "w"),
    ("v2", "w2"),
    ("w", "l"),
    ("w2", "l2"),
    ("w", "r"),
    ("w2", "r"),
    ("r", "t"),
];

/// Connection gadget passing from `s` to `t`; its reticulation is `w`.
pub const CONNECTION_FORWARD: [(&str, &str); 8] = [
    ("s", "u"),
    ("u", "v"),
    ("u", "w"),
    ("v", "w2"),
    ("v", "t"),
    ("w2", "w"),
    ("w", "l"),
    ("w2", "l2"),
];

/// Connection gadget passing from `t` to `s`; its reticulation is `w2`.
pub const CONNECTION_BACKWARD: [(&str, &str); 8] = [
    ("t", "v"),
    ("v", "u"),
    ("v", "w2"),
    ("u", "w"),
    ("u", "s"),
    ("w", "w2"),
    ("w", "l"),
    ("w2", "l2"),
];

fn orient_gadget(spec: &mut OrientationSpec, gmap: &GadgetMap, role: &str, arcs: &[(&str, &str)]) {
    let g = gmap.gadget(role).unwrap_or_else(|| panic!("missing gadget {role}"));
    for &(a, b) in arcs {
        spec.set(g.vertices[a], g.vertices[b]);
    }
}

/// Tree-child orientation of the reduction network from a satisfying assignment.
pub fn build_n_phi(cnf: &CnfInstance, beta: &Assignment) -> Result<RootedNet, SatError> {
    if beta.len() != cnf.num_vars() {
        return Err(SatError::AssignmentLength { expected: cnf.num_vars(), found: beta.len() });
    }
    if !cnf.is_satisfied_by(beta) {
        return Err(SatError::UnsatisfiedAssignment);
    }
    let (net, gmap) = build_u_phi(cnf)?;
    let n = gmap.n;

    // root above the first root leaf
    let root_s = gmap.vertex(ROOT_ROLE, "s").expect("root gadget");
    let root_leaf = net.vertex_of(ROOT_LEAF).expect("root leaf");
    let mut spec = OrientationSpec::new(&net, Edge::new(root_s, root_leaf))?;

    for leaf in net.leaves().filter(|&x| x != root_leaf) {
        let p = net.neighbors(leaf).next().expect("leaf has a neighbour");
        spec.set(p, leaf);
    }
    for g in gmap.gadgets.iter().filter(|g| g.kind == GadgetKind::Reticulation) {
        orient_gadget(&mut spec, &gmap, &g.role, &RETICULATION_ARCS);
    }
    for k in 1..2 * n - 1 {
        let a = gmap.named(&format!("p{k}")).unwrap();
        let b = gmap.named(&format!("p{}", k + 1)).unwrap();
        spec.set(a, b);
    }
    for k in 1..=2 * n {
        let g = gmap.gadget(&retic_role(k)).unwrap();
        let t = g.vertices["t"];
        for x in net.neighbors(t) {
            if !in_any_reticulation_gadget(&gmap, x) {
                spec.set(t, x);
            }
        }
    }
    for i in 1..=n {
        let arcs = if beta.value(i) { &CONNECTION_FORWARD } else { &CONNECTION_BACKWARD };
        for h in 1..=2 {
            orient_gadget(&mut spec, &gmap, &variable_role(i, h), arcs);
        }
    }
    for (j, clause) in cnf.clauses().iter().enumerate() {
        let j1 = j + 1;
        let values: Vec<bool> = clause.iter().map(|l| l.eval(beta)).collect();
        let all_true = values.iter().all(|&x| x);
        for k in 1..=3 {
            let role = clause_role(j1, k);
            let lit = gmap.named(&format!("lit{j1}.{k}")).unwrap();
            let t = gmap.vertex(&role, "t").unwrap();
            spec.set(lit, t);
            let forward = if all_true { k < 3 } else { values[k - 1] };
            let arcs = if forward { &CONNECTION_FORWARD } else { &CONNECTION_BACKWARD };
            orient_gadget(&mut spec, &gmap, &role, arcs);
        }
    }

    let out = apply_orientation(&net, &spec)?;
    assert!(is_tree_child(&out), "constructed orientation is not tree-child");
    Ok(out)
}

fn in_any_reticulation_gadget(gmap: &GadgetMap, v: VertexId) -> bool {
    gmap.gadgets
        .iter()
        .filter(|g| g.kind == GadgetKind::Reticulation)
        .any(|g| g.vertices.values().any(|&x| x == v))
}

/// Reads the truth assignment off a tree-child orientation of the reduction
/// network: `x_i` is true when both t-terminals of its variable gadgets are
/// reticulations and false when both s-terminals are.
pub fn extract_assignment(net: &RootedNet, gmap: &GadgetMap) -> Result<Assignment, SatError> {
    let report = validate_rooted(net);
    if !report.is_valid() {
        return Err(SatError::InvalidNetwork(report));
    }
    if !is_tree_child(net) {
        return Err(SatError::NotTreeChild);
    }
    let lookup = |role: &str, name: &str| -> Result<VertexId, SatError> {
        gmap.vertex(role, name)
            .filter(|&v| net.has_vertex(v))
            .ok_or_else(|| SatError::InconsistentGadgetState(format!("{role}.{name} is not in the network")))
    };
    let mut values = Vec::with_capacity(gmap.n);
    for i in 1..=gmap.n {
        let (g1, g2) = (variable_role(i, 1), variable_role(i, 2));
        let [u1, v1, u2, v2] = [
            lookup(&g1, "s")?,
            lookup(&g1, "t")?,
            lookup(&g2, "s")?,
            lookup(&g2, "t")?,
        ];
        let ret = |x: VertexId| net.is_reticulation(x);
        values.push(match (ret(u1) && ret(u2), ret(v1) && ret(v2)) {
            (false, true) => true,
            (true, false) => false,
            _ => {
                return Err(SatError::InconsistentGadgetState(format!(
                    "variable {i}: s-terminals {}/{}, t-terminals {}/{} reticulate",
                    ret(u1),
                    ret(u2),
                    ret(v1),
                    ret(v2)
                )))
            }
        });
    }
    Ok(Assignment::new(values))
}
