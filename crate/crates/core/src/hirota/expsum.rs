use std::collections::HashMap;

use crate::algebra::RF;

/// `coeff * exp[e0 x + e1 y + e2 t]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpTerm {
    pub coeff: RF,
    pub exponent: [RF; 3],
}

/// Finite sum of exponentials of linear forms in `(x, y, t)`, with equal
/// exponents merged and zero terms dropped.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ExpSum {
    terms: Vec<ExpTerm>,
}

impl ExpSum {
    pub fn new(terms: impl IntoIterator<Item = ExpTerm>) -> Self {
        let mut out: Vec<ExpTerm> = Vec::new();
        let mut index: HashMap<[RF; 3], usize> = HashMap::new();
        for t in terms {
            if t.coeff.is_zero() {
                continue;
            }
            match index.get(&t.exponent) {
                Some(&i) => out[i].coeff = &out[i].coeff + &t.coeff,
                None => {
                    index.insert(t.exponent.clone(), out.len());
                    out.push(t);
                }
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        ExpSum { terms: out }
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `d^a/dx^a d^b/dy^b d^c/dt^c`.
    pub fn derivative(&self, orders: [u32; 3]) -> ExpSum {
        ExpSum::new(self.terms.iter().map(|t| {
            let mut c = t.coeff.clone();
            for (e, &n) in t.exponent.iter().zip(&orders) {
                for _ in 0..n {
                    c = &c * e;
                }
            }
            ExpTerm {
                coeff: c,
                exponent: t.exponent.clone(),
            }
        }))
    }

    pub fn mul(&self, other: &ExpSum) -> ExpSum {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(ExpTerm {
                    coeff: &a.coeff * &b.coeff,
                    exponent: [
                        &a.exponent[0] + &b.exponent[0],
                        &a.exponent[1] + &b.exponent[1],
                        &a.exponent[2] + &b.exponent[2],
                    ],
                });
            }
        }
        ExpSum::new(terms)
    }

    pub fn add(&self, other: &ExpSum) -> ExpSum {
        ExpSum::new(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn scale(&self, c: &RF) -> ExpSum {
        ExpSum::new(self.terms.iter().map(|t| ExpTerm {
            coeff: &t.coeff * c,
            exponent: t.exponent.clone(),
        }))
    }

    /// `tau tau_xxxx - 4 tau_xxx tau_x + 3 tau_xx^2 + 4 tau_x tau_t
    ///  - 4 tau tau_xt + 3 tau tau_yy - 3 tau_y^2`, by direct differentiation.
    pub fn hirota_operator(&self) -> ExpSum {
        let d = |o: [u32; 3]| self.derivative(o);
        let (tx, txx, txxx, txxxx) = (d([1, 0, 0]), d([2, 0, 0]), d([3, 0, 0]), d([4, 0, 0]));
        let (ty, tyy, tt, txt) = (d([0, 1, 0]), d([0, 2, 0]), d([0, 0, 1]), d([1, 0, 1]));
        let parts = [
            (1, self.mul(&txxxx)),
            (-4, txxx.mul(&tx)),
            (3, txx.mul(&txx)),
            (4, tx.mul(&tt)),
            (-4, self.mul(&txt)),
            (3, self.mul(&tyy)),
            (-3, ty.mul(&ty)),
        ];
        let mut acc = ExpSum::default();
        for (c, p) in parts {
            acc = acc.add(&p.scale(&RF::int(c)));
        }
        acc
    }

    /// Numeric value at `(x, y, t)` when all data are rational constants.
    pub fn eval_f64(&self, x: f64, y: f64, t: f64) -> Option<f64> {
        let mut s = 0.0;
        for term in &self.terms {
            let c = rf_f64(&term.coeff)?;
            let e: Option<Vec<f64>> = term.exponent.iter().map(rf_f64).collect();
            let e = e?;
            s += c * (e[0] * x + e[1] * y + e[2] * t).exp();
        }
        Some(s)
    }
}

pub(crate) fn rf_f64(r: &RF) -> Option<f64> {
    use num_traits::ToPrimitive;
    r.constant_value()?.to_f64()
}

/// `lhs = factor * exp[shift . (x, y, t)] * rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Gauge {
    pub shift: [RF; 3],
    pub factor: RF,
}

/// Finds a gauge factor relating two exponential sums, if one exists.
pub fn gauge_equivalence(lhs: &ExpSum, rhs: &ExpSum) -> Option<Gauge> {
    if lhs.terms.len() != rhs.terms.len() {
        return None;
    }
    if lhs.is_zero() {
        return Some(Gauge {
            shift: [RF::zero(), RF::zero(), RF::zero()],
            factor: RF::one(),
        });
    }
    let first = &lhs.terms[0];
    'candidates: for cand in &rhs.terms {
        let shift = [
            &first.exponent[0] - &cand.exponent[0],
            &first.exponent[1] - &cand.exponent[1],
            &first.exponent[2] - &cand.exponent[2],
        ];
        let factor = &first.coeff / &cand.coeff;
        let mut lookup: HashMap<[RF; 3], &RF> = HashMap::new();
        for t in &lhs.terms {
            lookup.insert(t.exponent.clone(), &t.coeff);
        }
        for t in &rhs.terms {
            let e = [
                &t.exponent[0] + &shift[0],
                &t.exponent[1] + &shift[1],
                &t.exponent[2] + &shift[2],
            ];
            match lookup.get(&e) {
                Some(c) if **c == &t.coeff * &factor => {}
                _ => continue 'candidates,
            }
        }
        return Some(Gauge { shift, factor });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_rf;

    fn term(c: &str, e: [&str; 3]) -> ExpTerm {
        ExpTerm {
            coeff: parse_rf(c).unwrap(),
            exponent: e.map(|s| parse_rf(s).unwrap()),
        }
    }

    #[test]
    fn merges_and_drops() {
        let s = ExpSum::new([
            term("1", ["k", "0", "0"]),
            term("-1", ["k", "0", "0"]),
            term("2", ["0", "0", "0"]),
        ]);
        assert_eq!(s.terms().len(), 1);
    }

    #[test]
    fn one_soliton_solves_hirota() {
        let s = ExpSum::new([
            term("1", ["0", "0", "0"]),
            term("a", ["k1 - k2", "k1^2 - k2^2", "k1^3 - k2^3"]),
        ]);
        assert!(s.hirota_operator().is_zero());
        let bad = ExpSum::new([term("1", ["0", "0", "0"]), term("a", ["1", "0", "0"])]);
        assert!(!bad.hirota_operator().is_zero());
    }

    #[test]
    fn gauge_of_itself_is_trivial() {
        let s = ExpSum::new([term("1", ["0", "0", "0"]), term("a", ["k", "k^2", "k^3"])]);
        let g = gauge_equivalence(&s, &s).unwrap();
        assert!(g.shift.iter().all(|r| r.is_zero()));
        assert!(g.factor.is_one());
        let other = ExpSum::new([term("1", ["0", "0", "0"]), term("a", ["2*k", "k^2", "k^3"])]);
        assert!(gauge_equivalence(&s, &other).is_none());
    }
}
