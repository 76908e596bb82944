use crate::algebra::{frac, int, Scalar};
use crate::tropical::{Edge, MetricGraph};

fn e(tail: usize, head: usize, length: Scalar) -> Edge {
    Edge { tail, head, length }
}

fn unit_graph(vertices: usize, pairs: &[(usize, usize)]) -> MetricGraph {
    let edges = pairs.iter().map(|&(a, b)| e(a, b, int(1))).collect();
    MetricGraph::with_fundamental_cycles(vertices, edges).expect("fixture graphs are valid")
}

/// Two loops of length 2 joined by a bridge of length 1/2.
pub fn dumbbell() -> MetricGraph {
    let edges = vec![e(0, 0, int(2)), e(0, 1, frac(1, 2)), e(1, 1, int(2))];
    MetricGraph::new(2, edges, vec![vec![1, 0, 0], vec![0, 0, 1]]).unwrap()
}

/// Three edges of length 2 between two vertices.
pub fn theta() -> MetricGraph {
    let edges = vec![e(0, 1, int(2)), e(0, 1, int(2)), e(0, 1, int(2))];
    MetricGraph::new(2, edges, vec![vec![1, -1, 0], vec![0, 1, -1]]).unwrap()
}

pub fn genus2_graphs() -> Vec<(&'static str, MetricGraph)> {
    vec![("dumbbell", dumbbell()), ("theta", theta())]
}

/// The five trivalent genus-3 graphs with unit edge lengths, followed by the
/// four-edge banana graph (K4 with a perfect matching contracted).
pub fn genus3_graphs() -> Vec<(&'static str, MetricGraph)> {
    vec![
        (
            "k4",
            unit_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        ),
        (
            "two-doubles",
            unit_graph(4, &[(0, 1), (0, 1), (2, 3), (2, 3), (0, 2), (1, 3)]),
        ),
        (
            "double-loop",
            unit_graph(4, &[(0, 1), (0, 1), (0, 2), (1, 2), (2, 3), (3, 3)]),
        ),
        (
            "chain",
            unit_graph(4, &[(0, 0), (0, 1), (1, 2), (1, 2), (2, 3), (3, 3)]),
        ),
        (
            "three-loops",
            unit_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 1), (2, 2), (3, 3)]),
        ),
        ("banana", unit_graph(2, &[(0, 1), (0, 1), (0, 1), (0, 1)])),
    ]
}

/// Complete bipartite graph on 3 + 3 vertices.
pub fn k33() -> MetricGraph {
    unit_graph(
        6,
        &[
            (0, 3),
            (0, 4),
            (0, 5),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 3),
            (2, 4),
            (2, 5),
        ],
    )
}

/// Four loops hanging off a tree with two internal vertices.
pub fn four_loops() -> MetricGraph {
    unit_graph(
        6,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (1, 5),
            (2, 2),
            (3, 3),
            (4, 4),
            (5, 5),
        ],
    )
}
