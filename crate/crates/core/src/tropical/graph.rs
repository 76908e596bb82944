use num_traits::{One, Signed, Zero};

use crate::algebra::{int, Scalar};
use crate::error::{Error, Result};

/// Edge between two vertices with a positive rational length. Loops are
/// allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub length: Scalar,
}

/// Metric graph together with a chosen cycle basis, one row of `cycles` per
/// cycle and one column per edge.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricGraph {
    vertices: usize,
    edges: Vec<Edge>,
    cycles: Vec<Vec<i64>>,
}

/// Symmetric positive definite tropical Riemann matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RiemannMatrix(pub Vec<Vec<Scalar>>);

impl MetricGraph {
    pub fn new(vertices: usize, edges: Vec<Edge>, cycles: Vec<Vec<i64>>) -> Result<Self> {
        for (i, e) in edges.iter().enumerate() {
            if e.tail >= vertices || e.head >= vertices {
                return Err(Error::input(format!(
                    "edge {i} has an endpoint outside 0..{vertices}"
                )));
            }
            if !e.length.is_positive() {
                return Err(Error::input(format!("edge {i} has non-positive length")));
            }
        }
        for (r, row) in cycles.iter().enumerate() {
            if row.len() != edges.len() {
                return Err(Error::input(format!(
                    "cycle {r} has {} entries, expected {}",
                    row.len(),
                    edges.len()
                )));
            }
            let mut flow = vec![0i64; vertices];
            for (e, &m) in edges.iter().zip(row) {
                flow[e.head] += m;
                flow[e.tail] -= m;
            }
            if flow.iter().any(|&f| f != 0) {
                return Err(Error::input(format!(
                    "row {r} of the cycle matrix is not a cycle"
                )));
            }
        }
        let g = Self::betti(vertices, &edges);
        if g != cycles.len() {
            return Err(Error::input(format!(
                "first Betti number is {g} but {} cycles were given",
                cycles.len()
            )));
        }
        Ok(MetricGraph {
            vertices,
            edges,
            cycles,
        })
    }

    /// Graph with the fundamental cycle basis of a breadth-first spanning
    /// forest; each non-tree edge is traversed from tail to head.
    pub fn with_fundamental_cycles(vertices: usize, edges: Vec<Edge>) -> Result<Self> {
        for (i, e) in edges.iter().enumerate() {
            if e.tail >= vertices || e.head >= vertices {
                return Err(Error::input(format!(
                    "edge {i} has an endpoint outside 0..{vertices}"
                )));
            }
        }
        let mut adj: Vec<Vec<(usize, usize)>> = vec![vec![]; vertices];
        for (i, e) in edges.iter().enumerate() {
            if e.tail != e.head {
                adj[e.tail].push((e.head, i));
                adj[e.head].push((e.tail, i));
            }
        }
        // parent[v] = (parent vertex, edge index)
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; vertices];
        let mut depth = vec![usize::MAX; vertices];
        let mut tree = vec![false; edges.len()];
        for root in 0..vertices {
            if depth[root] != usize::MAX {
                continue;
            }
            depth[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &(w, i) in &adj[v] {
                    if depth[w] == usize::MAX {
                        depth[w] = depth[v] + 1;
                        parent[w] = Some((v, i));
                        tree[i] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let step = |row: &mut Vec<i64>, from: usize, i: usize| {
            row[i] += if edges[i].tail == from { 1 } else { -1 };
        };
        let mut cycles = Vec::new();
        for (i, e) in edges.iter().enumerate() {
            if tree[i] {
                continue;
            }
            let mut row = vec![0i64; edges.len()];
            row[i] = 1;
            // walk head -> tail through the tree
            let (mut a, mut b) = (e.head, e.tail);
            let mut tail_side = Vec::new();
            while a != b {
                if depth[a] >= depth[b] {
                    let (p, j) = parent[a].expect("non-root");
                    step(&mut row, a, j);
                    a = p;
                } else {
                    let (p, j) = parent[b].expect("non-root");
                    tail_side.push((p, j));
                    b = p;
                }
            }
            for (p, j) in tail_side.into_iter().rev() {
                step(&mut row, p, j);
            }
            cycles.push(row);
        }
        MetricGraph::new(vertices, edges, cycles)
    }

    fn betti(vertices: usize, edges: &[Edge]) -> usize {
        let mut parent: Vec<usize> = (0..vertices).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let n = p[y];
                p[y] = r;
                y = n;
            }
            r
        }
        let mut components = vertices;
        for e in edges {
            let (a, b) = (find(&mut parent, e.tail), find(&mut parent, e.head));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        edges.len() + components - vertices
    }

    pub fn genus(&self) -> usize {
        self.cycles.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn cycles(&self) -> &[Vec<i64>] {
        &self.cycles
    }

    /// Columns of the cycle matrix, one vector in `Z^g` per edge.
    pub fn edge_vectors(&self) -> Vec<Vec<i64>> {
        (0..self.edges.len())
            .map(|e| self.cycles.iter().map(|r| r[e]).collect())
            .collect()
    }

    /// Same graph with the cycle matrix replaced by `u * cycles`.
    pub fn with_cycles(&self, cycles: Vec<Vec<i64>>) -> Result<Self> {
        MetricGraph::new(self.vertices, self.edges.clone(), cycles)
    }
}

/// `Q = Lambda * Delta * Lambda^T`.
pub fn riemann_matrix(graph: &MetricGraph) -> Result<RiemannMatrix> {
    let g = graph.genus();
    let lam = graph.cycles();
    let mut q = vec![vec![Scalar::zero(); g]; g];
    for i in 0..g {
        for j in 0..g {
            let mut s = Scalar::zero();
            for (e, edge) in graph.edges().iter().enumerate() {
                let p = lam[i][e] * lam[j][e];
                if p != 0 {
                    s += &edge.length * int(p);
                }
            }
            q[i][j] = s;
        }
    }
    let rm = RiemannMatrix(q);
    if rm.leading_minors().iter().any(|m| !m.is_positive()) {
        return Err(Error::DegenerateCycleBasis);
    }
    Ok(rm)
}

impl RiemannMatrix {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.0[i][j] == self.0[j][i]))
    }

    /// Determinants of the leading principal submatrices.
    pub fn leading_minors(&self) -> Vec<Scalar> {
        (1..=self.dim())
            .map(|k| {
                let m: Vec<Vec<Scalar>> = (0..k).map(|i| self.0[i][..k].to_vec()).collect();
                scalar_det(m)
            })
            .collect()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.is_symmetric() && self.leading_minors().iter().all(|m| m.is_positive())
    }

    /// `u^T Q v`.
    pub fn form(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let mut s = Scalar::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if !vj.is_zero() {
                    s += ui * &self.0[i][j] * vj;
                }
            }
        }
        s
    }

    pub fn inverse(&self) -> Option<Vec<Vec<Scalar>>> {
        scalar_inverse(&self.0)
    }
}

pub fn scalar_det(mut m: Vec<Vec<Scalar>>) -> Scalar {
    let n = m.len();
    let mut det = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let piv = m[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &piv;
            for k in c..n {
                let t = &f * &m[c][k];
                m[r][k] -= t;
            }
        }
    }
    det
}

/// Solve `m x = b` exactly; `None` if `m` is singular.
pub fn scalar_solve(m: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        let inv = a[c][c].recip();
        for k in c..=n {
            a[c][k] = &a[c][k] * &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in c..=n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n].clone()).collect())
}

pub fn scalar_inverse(m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Scalar> = (0..n)
            .map(|i| {
                if i == j {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            })
            .collect();
        cols.push(scalar_solve(m, &e)?);
    }
    Some(
        (0..n)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect(),
    )
}
