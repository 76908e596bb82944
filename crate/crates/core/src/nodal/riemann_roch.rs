use std::fmt;

use super::{coordinate, DivisorTerm, NodalCurve, Place, Point};
use crate::algebra::{kernel_basis, rref, RF};
use crate::error::{Error, Result};

/// A tuple of rational functions, one per component of a subcurve, each in
/// the coordinate `x<c>` of its component.
#[derive(Clone, Debug, PartialEq)]
pub struct Section {
    pub parts: Vec<(usize, RF)>,
}

impl Section {
    pub fn part(&self, component: usize) -> Option<&RF> {
        self.parts
            .iter()
            .find(|(c, _)| *c == component)
            .map(|(_, f)| f)
    }

    /// Value at a place; an error at a pole.
    pub fn value(&self, place: &Place) -> Result<RF> {
        let f = self
            .part(place.component)
            .ok_or_else(|| Error::input(format!("no component {}", place.component)))?;
        evaluate(f, place)
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|(_, r)| r.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Value of a function of `x<c>` at a place of component `c`.
pub(crate) fn evaluate(f: &RF, place: &Place) -> Result<RF> {
    let v = coordinate(place.component);
    match &place.point {
        Point::Finite(c) => f.substitute_var(v, c),
        Point::Infinity => {
            let (dn, dd) = (f.num().degree_in(v), f.den().degree_in(v));
            if f.is_zero() || dn < dd {
                Ok(RF::zero())
            } else if dn == dd {
                RF::new(f.num().leading_coeff_in(v), f.den().leading_coeff_in(v))
            } else {
                Err(Error::DivisionByZero)
            }
        }
    }
}

/// Basis `x^k R / P` of `H^0(P^1, E)` on component `c`, where `P` collects
/// the finite poles and `R` the finite zeros of `E`.
fn line_basis(c: usize, terms: &[&DivisorTerm]) -> Vec<RF> {
    let x = RF::var(coordinate(c));
    let mut num = RF::one();
    let mut den = RF::one();
    let mut degree = 0i64;
    for t in terms {
        degree += t.multiplicity;
        if let Point::Finite(a) = &t.place.point {
            let lin = &x - a;
            let pow = lin
                .pow(t.multiplicity.unsigned_abs() as i32)
                .expect("nonnegative power");
            if t.multiplicity > 0 {
                den = &den * &pow;
            } else {
                num = &num * &pow;
            }
        }
    }
    let base = &num * &den.recip().expect("nonzero");
    (0..=degree)
        .map(|k| &base * &x.pow(k as i32).expect("nonnegative power"))
        .collect()
}

/// Basis of `H^0(X', E)` for the subcurve `X'` made of `comps`: tuples of
/// functions in the spaces of the components that agree at every node
/// inside `X'`. The basis is normalized by reduced row echelon form of the
/// values at those nodes, in input order, followed by the coordinates in the
/// component bases, so it does not depend on internal choices.
pub fn riemann_roch_space(
    curve: &NodalCurve,
    comps: &[usize],
    e: &[DivisorTerm],
) -> Result<Vec<Section>> {
    let nodes = curve.nodes_within(comps);
    for t in e {
        if !comps.contains(&t.place.component) {
            return Err(Error::input(format!(
                "divisor point {} is not on the subcurve",
                t.place
            )));
        }
        if nodes.iter().any(|n| n.0 == t.place || n.1 == t.place) {
            return Err(Error::input(format!(
                "divisor is supported on the node {}",
                t.place
            )));
        }
    }
    // Unknowns: coefficients in each component basis.
    let mut blocks: Vec<(usize, Vec<RF>)> = Vec::new();
    for &c in comps {
        let terms: Vec<&DivisorTerm> = e
            .iter()
            .filter(|t| t.place.component == c && t.multiplicity != 0)
            .collect();
        blocks.push((c, line_basis(c, &terms)));
    }
    let total: usize = blocks.iter().map(|b| b.1.len()).sum();
    let offset = |c: usize| -> usize {
        blocks
            .iter()
            .take_while(|b| b.0 != c)
            .map(|b| b.1.len())
            .sum()
    };
    let block = |c: usize| -> &Vec<RF> { &blocks.iter().find(|b| b.0 == c).unwrap().1 };
    let values_at = |pl: &Place| -> Result<Vec<RF>> {
        let mut row = vec![RF::zero(); total];
        let off = offset(pl.component);
        for (k, f) in block(pl.component).iter().enumerate() {
            row[off + k] = evaluate(f, pl)?;
        }
        Ok(row)
    };
    let mut rows = Vec::new();
    for n in &nodes {
        let a = values_at(&n.0)?;
        let b = values_at(&n.1)?;
        rows.push(a.iter().zip(&b).map(|(u, v)| u - v).collect::<Vec<RF>>());
    }
    let kernel = if rows.is_empty() {
        (0..total)
            .map(|i| {
                (0..total)
                    .map(|j| if i == j { RF::one() } else { RF::zero() })
                    .collect()
            })
            .collect()
    } else {
        kernel_basis(&rows, total)
    };
    if kernel.is_empty() {
        return Ok(vec![]);
    }
    // Canonical basis: reduce [node values | coefficients].
    let node_rows: Vec<Vec<RF>> = nodes
        .iter()
        .map(|n| values_at(&n.0))
        .collect::<Result<_>>()?;
    let mut m: Vec<Vec<RF>> = kernel
        .iter()
        .map(|v| {
            let mut row: Vec<RF> = node_rows.iter().map(|r| RF::dot(r, v)).collect();
            row.extend(v.iter().cloned());
            row
        })
        .collect();
    rref(&mut m);
    let skip = nodes.len();
    Ok(m.into_iter()
        .map(|row| {
            let coeffs = &row[skip..];
            let parts = blocks
                .iter()
                .map(|(c, basis)| {
                    let off = offset(*c);
                    let mut f = RF::zero();
                    for (k, b) in basis.iter().enumerate() {
                        if !coeffs[off + k].is_zero() {
                            f = &f + &(&coeffs[off + k] * b);
                        }
                    }
                    (*c, f)
                })
                .collect();
            Section { parts }
        })
        .collect())
}
