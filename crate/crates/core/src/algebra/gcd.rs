//! Polynomial gcd over the rationals.
//!
//! Univariate inputs use Euclid with monic remainders. Multivariate inputs are
//! reduced variable by variable: a variable occurring in only one argument is
//! removed by taking contents, and shared variables go through a primitive
//! pseudo-remainder sequence.

use num_traits::{One, Zero};

use super::poly::{Monomial, MultiPoly, Scalar};
use super::var::Var;

/// Monic (in printing order) greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    gcd_raw(a, b).monic()
}

fn gcd_raw(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    if a == b {
        return a.clone();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mono = ma.gcd(&mb);
    let a = if ma.is_one() {
        a.clone()
    } else {
        a.div_monomial(&ma).unwrap()
    };
    let b = if mb.is_one() {
        b.clone()
    } else {
        b.div_monomial(&mb).unwrap()
    };
    let core = gcd_nomono(&a, &b);
    core.mul_monomial(&mono, &Scalar::one())
}

fn gcd_nomono(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    let va = a.vars();
    let vb = b.vars();
    if let Some(&x) = va.difference(&vb).next() {
        return content_in(a, x, Some(b));
    }
    if let Some(&x) = vb.difference(&va).next() {
        return content_in(b, x, Some(a));
    }
    if va.len() == 1 {
        let x = *va.iter().next().unwrap();
        return univariate_gcd(a, b, x);
    }
    if a.div_exact(b).is_some() {
        return b.clone();
    }
    if b.div_exact(a).is_some() {
        return a.clone();
    }
    let x = *va
        .iter()
        .min_by_key(|&&v| (a.degree_in(v).max(b.degree_in(v)), v.name()))
        .unwrap();
    let ca = content_in(a, x, None);
    let cb = content_in(b, x, None);
    let c = gcd_raw(&ca, &cb);
    let mut p = a.div_exact(&ca).unwrap();
    let mut q = b.div_exact(&cb).unwrap();
    if p.degree_in(x) < q.degree_in(x) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = prem(&p, &q, x);
        if r.is_zero() {
            break;
        }
        if r.degree_in(x) == 0 {
            q = MultiPoly::one();
            break;
        }
        p = q;
        let cr = content_in(&r, x, None);
        q = r.div_exact(&cr).unwrap();
    }
    let cq = content_in(&q, x, None);
    let q = q.div_exact(&cq).unwrap();
    &c * &q
}

/// Gcd of the coefficients of `a` as a polynomial in `x`. When `other` is
/// given, stops early once the running gcd becomes coprime to it.
fn content_in(a: &MultiPoly, x: Var, other: Option<&MultiPoly>) -> MultiPoly {
    let mut coeffs: Vec<MultiPoly> = a
        .coefficients_in(x)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    coeffs.sort_by_key(|c| (c.num_terms(), c.total_degree()));
    let mut g = match other {
        Some(o) => o.clone(),
        None => coeffs.remove(0),
    };
    for c in coeffs {
        if g.is_constant() {
            return MultiPoly::one();
        }
        g = gcd_raw(&g, &c);
    }
    if g.is_constant() {
        MultiPoly::one()
    } else {
        g
    }
}

/// Pseudo-remainder of `a` by `b` in `x`, up to a nonzero factor.
pub fn prem(a: &MultiPoly, b: &MultiPoly, x: Var) -> MultiPoly {
    let db = b.degree_in(x);
    let lb = b.leading_coeff_in(x);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(x) >= db {
        let dr = r.degree_in(x);
        let lr = r.leading_coeff_in(x);
        let shift = Monomial::var(x, dr - db);
        let t = (&lr * b).mul_monomial(&shift, &Scalar::one());
        r = &(&r * &lb) - &t;
    }
    r
}

fn univariate_gcd(a: &MultiPoly, b: &MultiPoly, x: Var) -> MultiPoly {
    let to_dense = |p: &MultiPoly| -> Vec<Scalar> {
        p.coefficients_in(x)
            .into_iter()
            .map(|c| c.constant_term())
            .collect()
    };
    let mut p = to_dense(a);
    let mut q = to_dense(b);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    make_monic(&mut q);
    while !q.is_empty() {
        let r = dense_rem(&p, &q);
        p = q;
        q = r;
        make_monic(&mut q);
    }
    let coeffs: Vec<MultiPoly> = p.into_iter().map(MultiPoly::constant).collect();
    MultiPoly::from_univariate(x, &coeffs)
}

fn make_monic(p: &mut Vec<Scalar>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    if let Some(l) = p.last().cloned() {
        let inv = l.recip();
        for c in p.iter_mut() {
            *c *= &inv;
        }
    }
}

/// Remainder of `p` by monic `q` (dense, ascending).
fn dense_rem(p: &[Scalar], q: &[Scalar]) -> Vec<Scalar> {
    let mut r = p.to_vec();
    let dq = q.len() - 1;
    while r.len() > dq && !r.is_empty() {
        let lead = r.last().unwrap().clone();
        let shift = r.len() - 1 - dq;
        if !lead.is_zero() {
            for (i, c) in q.iter().enumerate() {
                r[shift + i] -= &lead * c;
            }
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}
