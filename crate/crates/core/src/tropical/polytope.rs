//! Lattice polytopes `{c : 0 <= s_e lambda_e^T c <= 1}` cut out by the
//! oriented columns of a cycle matrix, and their classification.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::graph::{scalar_inverse, MetricGraph};
use super::voronoi::combinations;
use crate::algebra::{int, Scalar};
use crate::error::{Error, Result};

/// Vertices and facet count of one polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    pub vertices: Vec<Vec<i64>>,
    pub facets: usize,
}

impl LatticePolytope {
    /// `(vertex count, facet count)`.
    pub fn signature(&self) -> (usize, usize) {
        (self.vertices.len(), self.facets)
    }

    /// Dimension of the affine hull of the vertices.
    pub fn dimension(&self) -> usize {
        let Some(p0) = self.vertices.first() else {
            return 0;
        };
        let diffs: Vec<Vec<i64>> = self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(p0).map(|(a, b)| a - b).collect())
            .collect();
        int_rank(&diffs)
    }
}

fn to_scalar_rows(rows: &[Vec<i64>]) -> Vec<Vec<Scalar>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| int(x)).collect())
        .collect()
}

/// Rank of an integer matrix by exact elimination over Q.
pub fn int_rank(rows: &[Vec<i64>]) -> usize {
    let mut m = to_scalar_rows(rows);
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[r][c];
            for k in c..cols {
                let t = &f * &m[r][k];
                m[i][k] -= t;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

fn det_i128(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0] as i128;
    }
    let mut s = 0i128;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let term = m[0][j] as i128 * det_i128(&minor);
        s += if j % 2 == 0 { term } else { -term };
    }
    s
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Normal to the hyperplane spanned by `g - 1` difference vectors in `Z^g`,
/// by cofactor expansion; zero if they are dependent.
fn cofactor_normal(diffs: &[Vec<i64>], g: usize) -> Vec<i128> {
    (0..g)
        .map(|j| {
            let minor: Vec<Vec<i64>> = diffs
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let d = det_i128(&minor);
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

fn dot(n: &[i128], v: &[i64]) -> i128 {
    n.iter().zip(v).map(|(a, &b)| a * b as i128).sum()
}

/// Number of facets of the convex hull of a full-dimensional point set.
pub fn facet_count(points: &[Vec<i64>], g: usize) -> usize {
    if g == 0 || points.len() <= g {
        return if g == 0 { 0 } else { points.len() };
    }
    let mut facets: BTreeSet<(Vec<i128>, i128)> = BTreeSet::new();
    for subset in combinations(points.len(), g) {
        let p0 = &points[subset[0]];
        let diffs: Vec<Vec<i64>> = subset[1..]
            .iter()
            .map(|&i| points[i].iter().zip(p0).map(|(a, b)| a - b).collect())
            .collect();
        let mut n = cofactor_normal(&diffs, g);
        if n.iter().all(|&x| x == 0) {
            continue;
        }
        let gg = n.iter().fold(0, |acc, &x| gcd_i128(acc, x));
        n.iter_mut().for_each(|x| *x /= gg);
        let b = dot(&n, p0);
        let vals: Vec<i128> = points.iter().map(|p| dot(&n, p) - b).collect();
        let above = vals.iter().all(|&v| v >= 0);
        let below = vals.iter().all(|&v| v <= 0);
        if below && !above {
            n.iter_mut().for_each(|x| *x = -*x);
            facets.insert((n, -b));
        } else if above && !below {
            facets.insert((n, b));
        }
    }
    facets.len()
}

/// Lattice vertices and facet count of `{c : 0 <= lambda_e^T c <= 1}` where
/// `columns` are the already oriented vectors `lambda_e`.
pub fn delaunay_polytope_from_orientation(columns: &[Vec<i64>]) -> Result<LatticePolytope> {
    let g = columns.first().map_or(0, |c| c.len());
    if int_rank(columns) < g {
        return Err(Error::Unbounded(format!(
            "edge vectors span less than dimension {g}"
        )));
    }
    // c = B^{-1} y with y in [0,1]^g for any g independent columns B.
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for c in columns {
        let mut trial = basis.clone();
        trial.push(c.clone());
        if int_rank(&trial) == trial.len() {
            basis = trial;
        }
        if basis.len() == g {
            break;
        }
    }
    let inv = scalar_inverse(&to_scalar_rows(&basis)).expect("independent columns");
    let bound: Vec<i64> = (0..g)
        .map(|i| {
            let s = inv[i].iter().fold(Scalar::zero(), |a, x| a + x.abs());
            s.floor().to_integer().try_into().expect("small box")
        })
        .collect();
    let mut vertices = Vec::new();
    let mut c: Vec<i64> = bound.iter().map(|b| -b).collect();
    loop {
        let vals: Vec<i64> = columns
            .iter()
            .map(|l| l.iter().zip(&c).map(|(a, b)| a * b).sum())
            .collect();
        // At a lattice point every constraint is tight on one side, so the
        // active system is all of `columns`, which has rank g: a vertex.
        if vals.iter().all(|&v| (0..=1).contains(&v)) {
            vertices.push(c.clone());
        }
        let mut i = 0;
        loop {
            if i == g {
                vertices.sort();
                let facets = facet_count(&vertices, g);
                return Ok(LatticePolytope { vertices, facets });
            }
            if c[i] < bound[i] {
                c[i] += 1;
                break;
            }
            c[i] = -bound[i];
            i += 1;
        }
    }
}

/// Deduplicated `(vertices, facets)` signatures of the full-dimensional
/// polytopes over all edge orientations.
pub fn classify_delaunay(graph: &MetricGraph) -> Result<BTreeSet<(usize, usize)>> {
    let g = graph.genus();
    if g > 4 {
        return Err(Error::GenusTooLarge);
    }
    let cols: Vec<Vec<i64>> = graph
        .edge_vectors()
        .into_iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect();
    if cols.is_empty() {
        return Ok(BTreeSet::new());
    }
    // Flipping every sign maps the polytope to its negative, so the first
    // column's sign can be fixed.
    let n = cols.len();
    let masks: Vec<u64> = (0..1u64 << (n - 1)).collect();
    let results: Vec<Result<Option<(usize, usize)>>> = masks
        .par_iter()
        .map(|&mask| {
            let oriented: Vec<Vec<i64>> = cols
                .iter()
                .enumerate()
                .map(|(e, v)| {
                    let flip = e > 0 && (mask >> (e - 1)) & 1 == 1;
                    if flip {
                        v.iter().map(|x| -x).collect()
                    } else {
                        v.clone()
                    }
                })
                .collect();
            let p = delaunay_polytope_from_orientation(&oriented)?;
            Ok((p.dimension() == g && !p.vertices.is_empty()).then(|| p.signature()))
        })
        .collect();
    let mut out = BTreeSet::new();
    for r in results {
        if let Some(s) = r? {
            out.insert(s);
        }
    }
    Ok(out)
}
