use crate::algebra::{parse_rf, RF};
use crate::nodal::{DivisorTerm, NodalCurve, Node, Place, Point};

fn rf(s: &str) -> RF {
    parse_rf(s).expect("fixture expression")
}

fn term(component: usize, point: Point, multiplicity: i64) -> DivisorTerm {
    DivisorTerm {
        place: Place::new(component, point),
        multiplicity,
    }
}

/// Two lines meeting in three points, `kappa_i = k1, k2, k3` on `X_0` and
/// `0, 1, -1` on `X_1`; `q` is the point `2` of `X_1`.
fn two_lines(divisor: Vec<DivisorTerm>) -> NodalCurve {
    let nodes = ["0", "1", "-1"]
        .iter()
        .enumerate()
        .map(|(i, b)| {
            Node(
                Place::finite(0, rf(&format!("k{}", i + 1))),
                Place::finite(1, rf(b)),
            )
        })
        .collect();
    NodalCurve::new(2, nodes, Place::infinity(0), divisor).expect("valid fixture")
}

/// Two lines, `D = p`.
pub fn two_lines_p() -> NodalCurve {
    two_lines(vec![term(0, Point::Infinity, 1)])
}

/// Two lines, `D = -2q + 3p`.
pub fn two_lines_minus_2q_plus_3p() -> NodalCurve {
    two_lines(vec![
        term(1, Point::Finite(RF::int(2)), -2),
        term(0, Point::Infinity, 3),
    ])
}

/// Two lines, `D = 3q - 2p`.
pub fn two_lines_3q_minus_2p() -> NodalCurve {
    two_lines(vec![
        term(1, Point::Finite(RF::int(2)), 3),
        term(0, Point::Infinity, -2),
    ])
}

/// Four general lines: `X_0 n X_i = k_i`, `X_i n X_j = q_ij`, each `p_i` at
/// infinity on `X_i` and `D = p_1 + p_2 + p_3 - p`. The nodes of `X_1 u X_2
/// u X_3` are listed as `q23, q13, q12`.
pub fn four_lines() -> NodalCurve {
    let mut nodes: Vec<Node> = (1..=3)
        .map(|i| {
            Node(
                Place::finite(0, rf(&format!("k{i}"))),
                Place::finite(i, rf(&format!("k{i}"))),
            )
        })
        .collect();
    for (i, j) in [(2, 3), (1, 3), (1, 2)] {
        let q = rf(&format!("q{i}{j}"));
        nodes.push(Node(Place::finite(i, q.clone()), Place::finite(j, q)));
    }
    let divisor = vec![
        term(1, Point::Infinity, 1),
        term(2, Point::Infinity, 1),
        term(3, Point::Infinity, 1),
        term(0, Point::Infinity, -1),
    ];
    NodalCurve::new(4, nodes, Place::infinity(0), divisor).expect("valid fixture")
}
