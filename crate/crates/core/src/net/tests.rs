use super::*;
use crate::fixtures::*;

fn v(x: u32) -> VertexId {
    VertexId(x)
}

#[test]
fn two_leaf_net_is_valid() {
    assert!(validate_unrooted(&two_leaf()).is_valid());
    assert_eq!(two_leaf().reticulation_number(), 0);
}

#[test]
fn square_with_leaves_is_valid() {
    assert!(validate_unrooted(&square()).is_valid());
}

#[test]
fn triangle_with_one_leaf_reports_two_degree_two_vertices() {
    let vs = [v(1), v(2), v(3), v(4)];
    let es = [(v(1), v(2)), (v(2), v(3)), (v(1), v(3)), (v(1), v(4))];
    let ls = [(v(4), "a".to_string())];
    let report = UndirectedNet::from_parts(&vs, &es, &ls).unwrap_err();
    let bad: Vec<_> = report
        .violations
        .iter()
        .filter(|x| matches!(x, Violation::BadDegree { degree: 2, .. }))
        .collect();
    assert_eq!(bad.len(), 2);
    assert_eq!(report.violations.len(), 2);
}

#[test]
fn raw_records_report_every_problem() {
    let vs = [v(1), v(2), v(2)];
    let es = [(v(1), v(2)), (v(2), v(1)), (v(1), v(1)), (v(1), v(9))];
    let ls = [(v(1), "a".to_string()), (v(2), "a".to_string())];
    let report = UndirectedNet::from_parts(&vs, &es, &ls).unwrap_err();
    let has = |p: &dyn Fn(&Violation) -> bool| report.violations.iter().any(p);
    assert!(has(&|x| matches!(x, Violation::DuplicateVertex(_))));
    assert!(has(&|x| matches!(x, Violation::ParallelEdge(_))));
    assert!(has(&|x| matches!(x, Violation::SelfLoop(_))));
    assert!(has(&|x| matches!(x, Violation::UnknownVertex(_))));
    assert!(has(&|x| matches!(x, Violation::DuplicateLabel(_))));
}

#[test]
fn disconnected_is_reported() {
    let vs = [v(1), v(2), v(3), v(4)];
    let es = [(v(1), v(2)), (v(3), v(4))];
    let ls: Vec<_> = ["a", "b", "c", "d"]
        .iter()
        .enumerate()
        .map(|(i, l)| (v(i as u32 + 1), l.to_string()))
        .collect();
    let report = UndirectedNet::from_parts(&vs, &es, &ls).unwrap_err();
    assert_eq!(
        report.violations,
        vec![Violation::Disconnected { components: 2 }]
    );
}

#[test]
fn subdivide_two_leaf_edge() {
    let n = two_leaf();
    let (m, mid) = n.subdivide(Edge::from((1, 2))).unwrap();
    assert_eq!(m.degree(mid), 2);
    assert!(m.adjacent(v(1), mid) && m.adjacent(mid, v(2)));
    assert!(!m.adjacent(v(1), v(2)));
    let back = m.suppress(mid).unwrap();
    assert_eq!(back.edges().collect::<Vec<_>>(), n.edges().collect::<Vec<_>>());
    assert_eq!(back.label_set(), n.label_set());
    assert_eq!(n.subdivide(Edge::from((1, 7))).unwrap_err(), NetError::UnknownEdge(Edge::from((1, 7))));
}

#[test]
fn subdivide_rooted_arc() {
    let mut r = RootedNet::new();
    let (a, b) = (r.add_vertex(), r.add_vertex());
    r.add_arc(a, b).unwrap();
    let (s, mid) = r.subdivide(a, b).unwrap();
    assert!(s.has_arc(a, mid) && s.has_arc(mid, b) && !s.has_arc(a, b));
    let back = s.suppress(mid).unwrap();
    assert!(back.has_arc(a, b));
    assert_eq!(back.arc_count(), 1);
}

#[test]
fn suppress_errors() {
    let n = square();
    assert_eq!(n.suppress(v(1)).unwrap_err(), NetError::NotDegreeTwo(v(1)));
    // neighbours 2 and 4 of the degree-2 vertex 1 are already adjacent
    let vs = [v(1), v(2), v(3), v(4), v(5)];
    let es = [
        (v(1), v(2)),
        (v(1), v(4)),
        (v(2), v(4)),
        (v(2), v(3)),
        (v(3), v(4)),
        (v(3), v(5)),
    ];
    let mut g = UndirectedNet::new();
    for &x in &vs {
        g.insert_vertex(x);
    }
    for &(a, b) in &es {
        g.add_edge(a, b).unwrap();
    }
    assert_eq!(
        g.suppress(v(1)).unwrap_err(),
        NetError::WouldCreateParallelEdge(v(2), v(4))
    );
}

#[test]
fn reticulation_numbers() {
    assert_eq!(quartet().reticulation_number(), 0);
    assert_eq!(square().reticulation_number(), 1);
    assert_eq!(chorded_hexagon().reticulation_number(), 2);
    assert_eq!(k4_two_leaves().reticulation_number(), 3);
}

#[test]
fn rooted_validation() {
    let mut r = RootedNet::new();
    let root = r.add_vertex();
    let a = r.add_vertex();
    let b = r.add_vertex();
    r.add_arc(root, a).unwrap();
    r.add_arc(root, b).unwrap();
    r.set_label(a, "a").unwrap();
    r.set_label(b, "b").unwrap();
    r.set_root(root).unwrap();
    assert!(validate_rooted(&r).is_valid());
    assert_eq!(r.reticulation_number(), 0);
    let mut bad = r.clone();
    bad.remove_arc(root, b).unwrap();
    assert!(!validate_rooted(&bad).is_valid());
}

#[test]
fn directed_cycle_is_found() {
    let mut r = RootedNet::new();
    let xs: Vec<_> = (0..3).map(|_| r.add_vertex()).collect();
    r.add_arc(xs[0], xs[1]).unwrap();
    r.add_arc(xs[1], xs[2]).unwrap();
    r.add_arc(xs[2], xs[0]).unwrap();
    assert!(r.topological_order().is_none());
    assert_eq!(r.find_cycle().map(|c| c.len()), Some(3));
}

#[test]
fn ids_are_never_reused() {
    let mut n = two_leaf();
    let x = n.add_vertex();
    n.remove_vertex(x).unwrap();
    let y = n.add_vertex();
    assert!(y > x);
}
