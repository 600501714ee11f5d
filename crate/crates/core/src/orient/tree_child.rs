use crate::net::RootedNet;

/// Every non-leaf vertex has a child of in-degree one.
pub fn tree_child_by_definition(net: &RootedNet) -> bool {
    net.vertices()
        .filter(|&v| net.out_degree(v) > 0)
        .all(|v| net.children(v).any(|c| net.in_degree(c) == 1))
}

/// Some reticulation has a reticulation as a parent.
pub fn has_stack(net: &RootedNet) -> bool {
    net.reticulations()
        .any(|v| net.parents(v).any(|p| net.is_reticulation(p)))
}

/// Some vertex is the parent of two reticulations.
pub fn has_sibling_reticulations(net: &RootedNet) -> bool {
    net.vertices().any(|v| {
        net.children(v)
            .filter(|&c| net.is_reticulation(c))
            .count()
            >= 2
    })
}

/// Tree-child test. Evaluates both the definition and the stack/sibling
/// characterization and insists they agree.
pub fn is_tree_child(net: &RootedNet) -> bool {
    let by_def = tree_child_by_definition(net);
    let by_char = !has_stack(net) && !has_sibling_reticulations(net);
    assert_eq!(
        by_def,
        by_char,
        "tree-child characterizations disagree on a network with {} vertices",
        net.vertex_count()
    );
    by_def
}
