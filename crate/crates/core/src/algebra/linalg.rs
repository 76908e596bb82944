//! Exact determinants, ranks and kernels over the field of rational functions.

use super::gcd::gcd;
use super::poly::MultiPoly;
use super::ratfunc::RF;

pub type Matrix = Vec<Vec<RF>>;

/// Determinant by fraction-free (Bareiss) elimination. Row denominators are
/// cleared first so that elimination runs on polynomials with exact division.
pub fn det_exact(m: &[Vec<RF>]) -> RF {
    let n = m.len();
    if n == 0 {
        return RF::one();
    }
    assert!(
        m.iter().all(|r| r.len() == n),
        "det_exact needs a square matrix"
    );
    if n == 1 {
        return m[0][0].clone();
    }
    if n == 2 {
        return &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
    }
    let mut scale = MultiPoly::one();
    let mut a: Vec<Vec<MultiPoly>> = Vec::with_capacity(n);
    for row in m {
        let mut l = MultiPoly::one();
        for e in row {
            if !e.den().is_one() {
                let g = gcd(&l, e.den());
                l = &l * &e.den().div_exact(&g).unwrap();
            }
        }
        scale = &scale * &l;
        a.push(
            row.iter()
                .map(|e| {
                    if l.is_one() {
                        e.num().clone()
                    } else {
                        e.num() * &l.div_exact(e.den()).unwrap()
                    }
                })
                .collect(),
        );
    }
    let d = bareiss(&mut a);
    RF::new(d, scale).expect("row multipliers are nonzero")
}

/// Determinant of a polynomial matrix; destroys its input.
pub fn bareiss(a: &mut [Vec<MultiPoly>]) -> MultiPoly {
    let n = a.len();
    if n == 0 {
        return MultiPoly::one();
    }
    let mut sign = false;
    let mut prev = MultiPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n)
                .filter(|&i| !a[i][k].is_zero())
                .min_by_key(|&i| a[i][k].num_terms())
            else {
                return MultiPoly::zero();
            };
            a.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = if prev.is_one() {
                    t
                } else {
                    t.div_exact(&prev).expect("Bareiss division is exact")
                };
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut [Vec<RF>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| size(&m[i][c]))
        else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip().unwrap();
        for j in c..cols {
            if !m[r][j].is_zero() {
                m[r][j] = &m[r][j] * &inv;
            }
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                if m[r][j].is_zero() {
                    continue;
                }
                let t = &f * &m[r][j];
                m[i][j] = &m[i][j] - &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn size(r: &RF) -> usize {
    r.num().num_terms() + r.den().num_terms()
}

pub fn rank(m: &[Vec<RF>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Basis of the right null space; one vector per free column, with that
/// coordinate set to 1.
pub fn kernel_basis(m: &[Vec<RF>], cols: usize) -> Vec<Vec<RF>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![RF::zero(); cols];
        v[free] = RF::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -&a[r][free];
        }
        out.push(v);
    }
    out
}

pub fn mat_vec(m: &[Vec<RF>], v: &[RF]) -> Vec<RF> {
    m.iter().map(|row| RF::dot(row, v)).collect()
}

pub fn mat_mul(a: &[Vec<RF>], b: &[Vec<RF>]) -> Matrix {
    let k = b.len();
    let n = if k == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| RF::dot(row, &(0..k).map(|i| b[i][j].clone()).collect::<Vec<_>>()))
                .collect()
        })
        .collect()
}

pub fn transpose(a: &[Vec<RF>]) -> Matrix {
    if a.is_empty() {
        return vec![];
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}
