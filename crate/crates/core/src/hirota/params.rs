use std::collections::HashMap;

use super::{LatticeConfiguration, ThetaSum, WeightedPoint};
use crate::algebra::{MultiPoly, Var, RF};
use crate::error::{Error, Result};

fn cube_points(g: usize) -> Vec<Vec<i64>> {
    (0..1u32 << g)
        .map(|m| (0..g).rev().map(|i| ((m >> i) & 1) as i64).collect())
        .collect()
}

/// `{0,1}^2` in lexicographic order.
pub fn square() -> LatticeConfiguration {
    LatticeConfiguration::new(2, cube_points(2)).unwrap()
}

/// `{0,1}^3` in lexicographic order.
pub fn cube() -> LatticeConfiguration {
    LatticeConfiguration::new(3, cube_points(3)).unwrap()
}

/// `{0, e_1, ..., e_g}`.
pub fn simplex(g: usize) -> LatticeConfiguration {
    let mut pts = vec![vec![0; g]];
    for i in 0..g {
        let mut e = vec![0; g];
        e[i] = 1;
        pts.push(e);
    }
    LatticeConfiguration::new(g, pts).unwrap()
}

/// Triangular prism `{000, 001, 100, 101, 110, 111}`.
pub fn prism() -> LatticeConfiguration {
    let pts = [
        [0, 0, 0],
        [0, 0, 1],
        [1, 0, 0],
        [1, 0, 1],
        [1, 1, 0],
        [1, 1, 1],
    ];
    LatticeConfiguration::new(3, pts.iter().map(|p| p.to_vec()).collect()).unwrap()
}

fn power_diffs(a: &RF, b: &RF) -> [RF; 3] {
    let (a2, b2) = (a * a, b * b);
    [a - b, &a2 - &b2, &(&a2 * a) - &(&b2 * b)]
}

fn check_distinct(kappa: &[RF]) -> Result<()> {
    for i in 0..kappa.len() {
        for j in 0..i {
            if kappa[i] == kappa[j] {
                return Err(Error::Coincident(format!(
                    "kappa{} = kappa{}",
                    j + 1,
                    i + 1
                )));
            }
        }
    }
    Ok(())
}

/// `u_j = k_j - k_0`, `v_j = +-(k_j^2 - k_0^2)`, `w_j = k_j^3 - k_0^3` for
/// `kappa = (k_0, ..., k_g)`; `negate_v` selects the second component.
pub fn simplex_param(kappa: &[RF], negate_v: bool) -> Result<WeightedPoint> {
    if kappa.len() < 2 {
        return Err(Error::input(
            "need kappa_0 and at least one further parameter",
        ));
    }
    let (mut u, mut v, mut w) = (vec![], vec![], vec![]);
    for kj in &kappa[1..] {
        let [a, b, c] = power_diffs(kj, &kappa[0]);
        u.push(a);
        v.push(if negate_v { -b } else { b });
        w.push(c);
    }
    WeightedPoint::new(u, v, w)
}

fn uvw(g: usize) -> (Vec<MultiPoly>, Vec<MultiPoly>, Vec<MultiPoly>) {
    let names = |p: &str| {
        (1..=g)
            .map(|i| MultiPoly::named(&format!("{p}{i}")))
            .collect()
    };
    (names("u"), names("v"), names("w"))
}

/// The `2g^2 - g` generators of the simplex component: cubics, diagonal
/// quartics, mixed quartics (`i != j`) and quintics, in that order.
pub fn theorem35_generators(g: usize) -> Vec<MultiPoly> {
    let (u, v, w) = uvw(g);
    let c = MultiPoly::int;
    let mut out = Vec::new();
    for i in 0..g {
        for j in i + 1..g {
            out.push(&v[i] * &u[j] - &v[j] * &u[i] - &u[i] * &u[j] * (&u[i] - &u[j]));
        }
    }
    for i in 0..g {
        out.push(c(4) * &w[i] * &u[i] - c(3) * v[i].pow(2) - u[i].pow(4));
    }
    for i in 0..g {
        for j in 0..g {
            if i != j {
                out.push(
                    c(4) * &w[j] * &u[i] - c(3) * &v[i] * &v[j]
                        + c(3) * &u[i] * (&u[i] - &u[j]) * &v[j]
                        - &u[i] * u[j].pow(3),
                );
            }
        }
    }
    for i in 0..g {
        for j in i + 1..g {
            out.push(
                c(4) * &w[i] * &v[j] - c(4) * &w[j] * &v[i]
                    + c(3) * &u[i] * &v[j] * (&v[j] - &v[i])
                    + &u[i] * &v[j] * (&u[j] - &u[i]) * (&u[i] - c(2) * &u[j])
                    + &u[i] * u[j].pow(3) * (&u[i] - &u[j]),
            );
        }
    }
    out
}

/// `v_j -> 2 u_j t + u_j^2`, `w_j -> 3 u_j t^2 + 3 u_j^2 t + u_j^3`.
pub fn simplex_substitution(g: usize) -> HashMap<Var, MultiPoly> {
    let t = MultiPoly::named("t");
    let c = MultiPoly::int;
    let mut m = HashMap::new();
    for j in 1..=g {
        let u = MultiPoly::named(&format!("u{j}"));
        m.insert(Var::new(&format!("v{j}")), c(2) * &u * &t + u.pow(2));
        m.insert(
            Var::new(&format!("w{j}")),
            c(3) * &u * t.pow(2) + c(3) * u.pow(2) * &t + u.pow(3),
        );
    }
    m
}

fn prod(xs: &[&RF]) -> RF {
    xs.iter().fold(RF::one(), |acc, x| &acc * *x)
}

/// Main component of the cube's Hirota variety, parametrized by six
/// spectral values and four scalings.
pub fn cube_param(kappa: &[RF], lambda: &[RF]) -> Result<(ThetaSum, WeightedPoint)> {
    if kappa.len() != 6 || lambda.len() != 4 {
        return Err(Error::input(
            "cube parametrization needs 6 kappas and 4 lambdas",
        ));
    }
    check_distinct(kappa)?;
    let k = |i: usize| &kappa[i - 1];
    let config = cube();
    let mut a = Vec::new();
    for c in config.points() {
        let i1 = if c[0] == 1 { 1 } else { 2 };
        let i2 = if c[1] == 1 { 3 } else { 4 };
        let i3 = if c[2] == 1 { 5 } else { 6 };
        let mut val = prod(&[
            &(k(i2) - k(i3)),
            &(k(i1) - k(i3)),
            &(k(i1) - k(i2)),
            &lambda[0],
        ]);
        for (b, l) in c.iter().zip(&lambda[1..]) {
            if *b == 1 {
                val = &val * l;
            }
        }
        a.push(val);
    }
    let pairs = [(1, 2), (3, 4), (5, 6)];
    let cols: Vec<[RF; 3]> = pairs
        .iter()
        .map(|&(i, j)| power_diffs(k(i), k(j)))
        .collect();
    let point = WeightedPoint::new(
        cols.iter().map(|c| c[0].clone()).collect(),
        cols.iter().map(|c| c[1].clone()).collect(),
        cols.iter().map(|c| c[2].clone()).collect(),
    )?;
    Ok((ThetaSum::new(config, a)?, point))
}

/// Irreducible Hirota variety of the triangular prism, parametrized by five
/// spectral values and four scalings.
pub fn prism_param(kappa: &[RF], lambda: &[RF]) -> Result<(ThetaSum, WeightedPoint)> {
    if kappa.len() != 5 || lambda.len() != 4 {
        return Err(Error::input(
            "prism parametrization needs 5 kappas and 4 lambdas",
        ));
    }
    check_distinct(kappa)?;
    let k = |i: usize| &kappa[i - 1];
    let l = lambda;
    let config = prism();
    let mut a = Vec::new();
    for c in config.points() {
        // c1 + c2 picks kappa_1..kappa_3, c3 picks kappa_4 or kappa_5
        let i = 1 + (c[0] + c[1]) as usize;
        let j = if c[2] == 1 { 5 } else { 4 };
        let mut val = &(k(i) - k(j)) * &l[0];
        if c[0] == 1 {
            val = &val * &l[1];
        }
        if c[1] == 1 {
            val = &val * &l[2];
        }
        if c[2] == 1 {
            val = &val * &l[3];
        }
        a.push(val);
    }
    let cols = [
        power_diffs(k(1), k(2)),
        power_diffs(k(2), k(3)),
        power_diffs(k(4), k(5)),
    ];
    let point = WeightedPoint::new(
        cols.iter().map(|c| c[0].clone()).collect(),
        cols.iter().map(|c| c[1].clone()).collect(),
        cols.iter().map(|c| c[2].clone()).collect(),
    )?;
    Ok((ThetaSum::new(config, a)?, point))
}
