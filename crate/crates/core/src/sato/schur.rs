use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::partition::Partition;
use crate::algebra::{det_exact, frac, Monomial, MultiPoly, Scalar, Var, RF};

pub(crate) fn xyt_vars() -> [Var; 3] {
    [Var::new("x"), Var::new("y"), Var::new("t")]
}

fn factorial(n: u32) -> Scalar {
    (1..=n as i64).fold(frac(1, 1), |a, k| a * frac(k, 1))
}

/// `phi_0, ..., phi_n` with `exp[x l + y l^2 + t l^3] = sum phi_j l^j`.
pub fn elementary_schur(n: usize) -> Vec<MultiPoly> {
    let [x, y, t] = xyt_vars();
    let mut out = vec![MultiPoly::zero(); n + 1];
    for c in 0..=n / 3 {
        for b in 0..=(n - 3 * c) / 2 {
            for a in 0..=n - 3 * c - 2 * b {
                let coeff =
                    frac(1, 1) / (factorial(a as u32) * factorial(b as u32) * factorial(c as u32));
                let m = Monomial::from_pairs([(x, a as u32), (y, b as u32), (t, c as u32)]);
                out[a + 2 * b + 3 * c].add_term(m, coeff);
            }
        }
    }
    out
}

fn cache() -> &'static Mutex<HashMap<Partition, MultiPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<Partition, MultiPoly>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Jacobi-Trudi determinant `det(phi_{lambda_i - i + j})`.
pub fn schur_sigma(lambda: &Partition) -> MultiPoly {
    if let Some(p) = cache().lock().unwrap().get(lambda) {
        return p.clone();
    }
    let l = lambda.len();
    let phi = elementary_schur(lambda.part(1) + l);
    let m: Vec<Vec<RF>> = (1..=l)
        .map(|i| {
            (1..=l)
                .map(|j| {
                    let idx = lambda.part(i) as i64 - i as i64 + j as i64;
                    if idx < 0 {
                        RF::zero()
                    } else {
                        RF::from_poly(phi[idx as usize].clone())
                    }
                })
                .collect()
        })
        .collect();
    let d = det_exact(&m);
    let p = d
        .as_poly()
        .expect("Jacobi-Trudi determinant is a polynomial")
        .clone();
    cache().lock().unwrap().insert(lambda.clone(), p.clone());
    p
}
