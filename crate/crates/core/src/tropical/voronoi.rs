//! Voronoi cells and Delaunay sets of a positive definite quadratic form on
//! `Z^g`, by exact lattice enumeration in a provably sufficient box.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::graph::{scalar_solve, RiemannMatrix};
use crate::algebra::{frac, int, Scalar, RF};
use crate::error::{Error, Result};

pub type Point = Vec<i64>;

/// Delaunay set of `a` with respect to `Q`, sorted lexicographically.
#[derive(Clone, Debug, PartialEq)]
pub struct DelaunaySet {
    pub a: Vec<Scalar>,
    pub points: Vec<Point>,
}

/// Smallest integer `k >= 0` with `k^2 >= s`.
fn ceil_sqrt(s: &Scalar) -> i64 {
    if !s.is_positive() {
        return 0;
    }
    let fl = s.to_integer();
    let mut k = fl.sqrt();
    while Scalar::from_integer(&k * &k) < *s {
        k += BigInt::one();
    }
    k.to_i64().expect("search box too large")
}

fn trace_inverse(q: &RiemannMatrix) -> Scalar {
    let inv = q
        .inverse()
        .expect("positive definite matrices are invertible");
    (0..q.dim())
        .map(|i| inv[i][i].clone())
        .fold(Scalar::zero(), |a, b| a + b)
}

/// All `c` in `Z^g` with `c^T Q c <= bound`.
pub fn short_vectors(q: &RiemannMatrix, bound: &Scalar) -> Vec<Point> {
    let g = q.dim();
    let r = ceil_sqrt(&(bound * trace_inverse(q)));
    let mut out = Vec::new();
    let mut c = vec![-r; g];
    if g == 0 {
        return vec![vec![]];
    }
    loop {
        let cs: Vec<Scalar> = c.iter().map(|&x| int(x)).collect();
        if q.form(&cs, &cs) <= *bound {
            out.push(c.clone());
        }
        let mut i = 0;
        loop {
            if i == g {
                return out;
            }
            if c[i] < r {
                c[i] += 1;
                break;
            }
            c[i] = -r;
            i += 1;
        }
    }
}

fn search_space(q: &RiemannMatrix, a: &[Scalar]) -> Vec<Point> {
    let bound = q.form(a, a) * int(4);
    short_vectors(q, &bound)
}

/// `c^T Q c - 2 c^T Q a`; nonnegative for all `c` iff `a` is in the cell.
fn excess(q: &RiemannMatrix, a: &[Scalar], c: &Point) -> Scalar {
    let cs: Vec<Scalar> = c.iter().map(|&x| int(x)).collect();
    q.form(&cs, &cs) - q.form(&cs, a) * int(2)
}

pub fn in_voronoi(q: &RiemannMatrix, a: &[Scalar]) -> bool {
    search_space(q, a)
        .iter()
        .all(|c| !excess(q, a, c).is_negative())
}

pub fn delaunay_set(q: &RiemannMatrix, a: &[Scalar]) -> Result<DelaunaySet> {
    let mut points = Vec::new();
    for c in search_space(q, a) {
        let e = excess(q, a, &c);
        if e.is_negative() {
            return Err(Error::NotInVoronoi);
        }
        if e.is_zero() {
            points.push(c);
        }
    }
    points.sort();
    Ok(DelaunaySet {
        a: a.to_vec(),
        points,
    })
}

/// Voronoi-relevant vectors: for each nonzero class of `Z^g / 2Z^g` whose
/// shortest members are exactly `+-c`, the vector `c`.
pub fn relevant_vectors(q: &RiemannMatrix) -> Vec<Point> {
    let g = q.dim();
    let mut bound = Scalar::zero();
    for mask in 1u32..(1 << g) {
        let v: Vec<Scalar> = (0..g).map(|i| int(((mask >> i) & 1) as i64)).collect();
        let n = q.form(&v, &v);
        if n > bound {
            bound = n;
        }
    }
    let mut best: std::collections::BTreeMap<Vec<i64>, (Scalar, Vec<Point>)> = Default::default();
    for c in short_vectors(q, &bound) {
        if c.iter().all(|&x| x == 0) {
            continue;
        }
        let class: Vec<i64> = c.iter().map(|x| x.rem_euclid(2)).collect();
        let cs: Vec<Scalar> = c.iter().map(|&x| int(x)).collect();
        let n = q.form(&cs, &cs);
        let entry = best.entry(class).or_insert_with(|| (n.clone(), vec![]));
        if n < entry.0 {
            *entry = (n, vec![c]);
        } else if n == entry.0 {
            entry.1.push(c);
        }
    }
    let mut out: Vec<Point> = best
        .into_values()
        .filter(|(_, vs)| vs.len() == 2)
        .flat_map(|(_, vs)| vs)
        .collect();
    out.sort();
    out
}

/// All vertices of the Voronoi cell of `Q`.
pub fn voronoi_vertices(q: &RiemannMatrix) -> Vec<Vec<Scalar>> {
    let g = q.dim();
    let rel = relevant_vectors(q);
    let rows: Vec<(Vec<Scalar>, Scalar)> = rel
        .iter()
        .map(|c| {
            let cs: Vec<Scalar> = c.iter().map(|&x| int(x)).collect();
            let qc: Vec<Scalar> = (0..g).map(|j| q.form(&cs, &unit(g, j)) * int(2)).collect();
            (qc, q.form(&cs, &cs))
        })
        .collect();
    let mut found: BTreeSet<Vec<Scalar>> = BTreeSet::new();
    for subset in combinations(rows.len(), g) {
        let m: Vec<Vec<Scalar>> = subset.iter().map(|&i| rows[i].0.clone()).collect();
        let b: Vec<Scalar> = subset.iter().map(|&i| rows[i].1.clone()).collect();
        let Some(a) = scalar_solve(&m, &b) else {
            continue;
        };
        let feasible = rows.iter().all(|(qc, n)| {
            let lhs: Scalar = qc
                .iter()
                .zip(&a)
                .map(|(x, y)| x * y)
                .fold(Scalar::zero(), |s, t| s + t);
            lhs <= *n
        });
        if feasible {
            found.insert(a);
        }
    }
    found.into_iter().collect()
}

fn unit(g: usize, j: usize) -> Vec<Scalar> {
    (0..g)
        .map(|i| {
            if i == j {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
        .collect()
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Voronoi vertices grouped up to lattice translation and the sign `a -> -a`.
/// Each orbit is represented by its lexicographically smallest member.
pub fn voronoi_vertex_orbits(q: &RiemannMatrix) -> Vec<Vec<Scalar>> {
    let verts = voronoi_vertices(q);
    let key = |a: &Vec<Scalar>| -> Vec<Scalar> {
        a.iter()
            .map(|x| x - Scalar::from_integer(x.floor().to_integer()))
            .collect()
    };
    let mut seen: BTreeSet<Vec<Scalar>> = BTreeSet::new();
    let mut reps = Vec::new();
    for a in &verts {
        let k = key(a);
        let neg: Vec<Scalar> = a.iter().map(|x| -x).collect();
        let kn = key(&neg);
        if seen.contains(&k) || seen.contains(&kn) {
            continue;
        }
        seen.insert(k);
        seen.insert(kn);
        let members: Vec<&Vec<Scalar>> = verts
            .iter()
            .filter(|b| {
                let kb = key(b);
                kb == key(a) || kb == key(&neg)
            })
            .collect();
        reps.push((*members.iter().min().unwrap()).clone());
    }
    reps.sort();
    reps
}

/// Limit data of the degenerating theta series: Delaunay set and the
/// exponents `q_c = c^T R0 c / 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaLimitData {
    pub set: DelaunaySet,
    pub r0: Vec<Vec<RF>>,
    pub exponents: Vec<RF>,
}

pub fn theta_limit(q: &RiemannMatrix, a: &[Scalar], r0: &[Vec<RF>]) -> Result<ThetaLimitData> {
    let g = q.dim();
    if r0.len() != g || r0.iter().any(|r| r.len() != g) {
        return Err(Error::input("R0 must be a g x g matrix"));
    }
    for i in 0..g {
        for j in 0..g {
            if r0[i][j] != r0[j][i] {
                return Err(Error::input("R0 must be symmetric"));
            }
        }
    }
    let set = delaunay_set(q, a)?;
    let half = RF::constant(frac(1, 2));
    let exponents = set
        .points
        .iter()
        .map(|c| {
            let mut s = RF::zero();
            for i in 0..g {
                for j in 0..g {
                    let k = c[i] * c[j];
                    if k != 0 && !r0[i][j].is_zero() {
                        s = &s + &r0[i][j].scale(&int(k));
                    }
                }
            }
            &s * &half
        })
        .collect();
    Ok(ThetaLimitData {
        set,
        r0: r0.to_vec(),
        exponents,
    })
}

impl ThetaLimitData {
    /// Numeric coefficient `exp(q_c)` when the exponent is a rational number.
    pub fn coefficient(&self, i: usize) -> Option<f64> {
        let q = self.exponents.get(i)?.constant_value()?;
        Some(q.to_f64()?.exp())
    }
}
