//! Small hand-built networks shared by tests, examples and the CLI docs.

use crate::net::{UndirectedNet, VertexId};

/// Builds a network from numeric edges and `(vertex, label)` pairs.
/// Panics on malformed input; meant for literals.
pub fn from_edges(edges: &[(u32, u32)], labels: &[(u32, &str)]) -> UndirectedNet {
    let mut vs: Vec<VertexId> = edges
        .iter()
        .flat_map(|&(a, b)| [VertexId(a), VertexId(b)])
        .collect();
    vs.sort();
    vs.dedup();
    let es: Vec<_> = edges
        .iter()
        .map(|&(a, b)| (VertexId(a), VertexId(b)))
        .collect();
    let ls: Vec<_> = labels
        .iter()
        .map(|&(v, l)| (VertexId(v), l.to_string()))
        .collect();
    match UndirectedNet::from_parts(&vs, &es, &ls) {
        Ok(n) => n,
        Err(r) => panic!("bad fixture: {r}"),
    }
}

/// Single edge between leaves `a` and `b`.
pub fn two_leaf() -> UndirectedNet {
    from_edges(&[(1, 2)], &[(1, "a"), (2, "b")])
}

/// Quartet tree with split `ab|cd`.
pub fn quartet() -> UndirectedNet {
    from_edges(
        &[(1, 5), (2, 5), (5, 6), (3, 6), (4, 6)],
        &[(1, "a"), (2, "b"), (3, "c"), (4, "d")],
    )
}

/// 4-cycle `1-2-3-4` with leaves a..d on 1..4.
pub fn square() -> UndirectedNet {
    from_edges(
        &[(1, 2), (2, 3), (3, 4), (1, 4), (1, 5), (2, 6), (3, 7), (4, 8)],
        &[(5, "a"), (6, "b"), (7, "c"), (8, "d")],
    )
}

/// Two 4-cycles joined by the cut-edge `{1,5}`; leaves a,b,c on the first and
/// d,f,g on the second.
pub fn two_squares() -> UndirectedNet {
    from_edges(
        &[
            (1, 2),
            (2, 3),
            (3, 4),
            (1, 4),
            (5, 6),
            (6, 7),
            (7, 8),
            (5, 8),
            (1, 5),
            (2, 9),
            (3, 10),
            (4, 11),
            (6, 12),
            (7, 13),
            (8, 14),
        ],
        &[
            (9, "a"),
            (10, "b"),
            (11, "c"),
            (12, "d"),
            (13, "f"),
            (14, "g"),
        ],
    )
}

/// K4 on 1..4 with the edge `{1,2}` replaced by the path `1-5-6-2`; leaves
/// on 5 and 6 only. The triangle 1-3-4 touches no cut-edge.
pub fn theta_two_leaves() -> UndirectedNet {
    from_edges(
        &[
            (1, 3),
            (1, 4),
            (2, 3),
            (2, 4),
            (3, 4),
            (1, 5),
            (5, 6),
            (2, 6),
            (5, 7),
            (6, 8),
        ],
        &[(7, "a"), (8, "b")],
    )
}

/// 6-cycle 1..6 with chord `{1,4}`; leaves a,b,c,d on 2,3,5,6.
pub fn chorded_hexagon() -> UndirectedNet {
    from_edges(
        &[
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (1, 6),
            (1, 4),
            (2, 7),
            (3, 8),
            (5, 9),
            (6, 10),
        ],
        &[(7, "a"), (8, "b"), (9, "c"), (10, "d")],
    )
}

/// K4 on 1..4 with every edge subdivided by a leaf-carrying vertex.
pub fn k4_fully_subdivided() -> UndirectedNet {
    let k4 = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
    let names = ["a", "b", "c", "d", "e", "f"];
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for (i, &(x, y)) in k4.iter().enumerate() {
        let mid = 5 + i as u32;
        let leaf = 11 + i as u32;
        edges.extend([(x, mid), (mid, y), (mid, leaf)]);
        labels.push((leaf, names[i]));
    }
    from_edges(&edges, &labels)
}

/// K4 with `{1,2}` and `{3,4}` subdivided by vertices carrying leaves a and b.
/// Reticulation number 3 exceeds `|X| - 1`, so no tree-child orientation exists.
pub fn k4_two_leaves() -> UndirectedNet {
    from_edges(
        &[
            (1, 5),
            (5, 2),
            (3, 6),
            (6, 4),
            (1, 3),
            (1, 4),
            (2, 3),
            (2, 4),
            (5, 7),
            (6, 8),
        ],
        &[(7, "a"), (8, "b")],
    )
}

/// Network of the worked embedding example: blob on v1..v8 with leaves
/// a,b,c,d,e,f on v1,v2,v3,v5,v6,v7.
pub fn embedding_example_net() -> UndirectedNet {
    from_edges(
        &[
            (1, 2),
            (7, 6),
            (4, 3),
            (4, 5),
            (8, 1),
            (8, 7),
            (8, 4),
            (2, 3),
            (5, 6),
            (1, 11),
            (2, 12),
            (3, 13),
            (5, 14),
            (6, 15),
            (7, 16),
        ],
        &[
            (11, "a"),
            (12, "b"),
            (13, "c"),
            (14, "d"),
            (15, "e"),
            (16, "f"),
        ],
    )
}

/// Tree displayed by [`embedding_example_net`].
pub const EMBEDDING_EXAMPLE_TREE: &str = "((a,b),(c,d),(e,f));";

/// Tree conflicting with [`two_squares`] on the split `abc|dfg`.
pub const CONFLICT_EXAMPLE_TREE: &str = "((a,b),g,(c,(d,f)));";

/// The 2-balanced formula `(x|~y|z)&(~x|y|~z)&(x|y|~z)&(~x|~y|z)` in DIMACS.
pub const WORKED_PHI_DIMACS: &str = "c x=1 y=2 z=3\np cnf 3 4\n1 -2 3 0\n-1 2 -3 0\n1 2 -3 0\n-1 -2 3 0\n";
