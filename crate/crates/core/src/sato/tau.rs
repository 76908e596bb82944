use std::collections::BTreeMap;
use std::fmt;

use super::schur::xyt_vars;
use crate::algebra::{gcd, Grading, Monomial, MultiPoly, Var, RF};
use crate::error::{Error, Result};

/// Polynomial in `x, y, t` whose coefficients are rational functions in any
/// other variables, stored as `num / den` with `den` free of `x, y, t`.
#[derive(Clone, Debug)]
pub struct TrivariatePoly {
    num: MultiPoly,
    den: MultiPoly,
}

fn is_xyt(v: Var) -> bool {
    xyt_vars().contains(&v)
}

impl TrivariatePoly {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if den.vars().into_iter().any(is_xyt) {
            return Err(Error::input("denominator must not involve x, y, t"));
        }
        Ok(TrivariatePoly { num, den })
    }

    pub fn zero() -> Self {
        TrivariatePoly {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> Self {
        TrivariatePoly {
            num: MultiPoly::one(),
            den: MultiPoly::one(),
        }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        TrivariatePoly {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `sum c_i p_i` for rational-function `c_i` and polynomials `p_i`, over
    /// the least common denominator.
    pub fn linear_combination<'a>(
        items: impl IntoIterator<Item = (&'a RF, &'a MultiPoly)>,
    ) -> Self {
        let items: Vec<(&RF, &MultiPoly)> = items
            .into_iter()
            .filter(|(c, p)| !c.is_zero() && !p.is_zero())
            .collect();
        let mut den = MultiPoly::one();
        for (c, _) in &items {
            let g = gcd(&den, c.den());
            den = &den * &c.den().div_exact(&g).expect("gcd divides");
        }
        let mut num = MultiPoly::zero();
        for (c, p) in items {
            let f = den.div_exact(c.den()).expect("lcm is a multiple");
            num += &(&(c.num() * &f) * p);
        }
        TrivariatePoly { num, den }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return TrivariatePoly {
                num: &self.num + &other.num,
                den: self.den.clone(),
            };
        }
        TrivariatePoly {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
    }

    pub fn neg(&self) -> Self {
        TrivariatePoly {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        TrivariatePoly {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    pub fn scale(&self, c: &RF) -> Self {
        TrivariatePoly {
            num: &self.num * c.num(),
            den: &self.den * c.den(),
        }
    }

    pub fn derivative(&self, v: Var) -> Self {
        TrivariatePoly {
            num: self.num.derivative(v),
            den: self.den.clone(),
        }
    }

    /// Coefficient of each monomial in `x, y, t`.
    pub fn coefficients(&self) -> BTreeMap<Monomial, RF> {
        let mut parts: BTreeMap<Monomial, MultiPoly> = BTreeMap::new();
        for (m, c) in self.num.terms() {
            let (xyt, rest): (Vec<(Var, u32)>, Vec<(Var, u32)>) =
                m.pairs().iter().partition(|(v, _)| is_xyt(*v));
            parts
                .entry(Monomial::from_pairs(xyt))
                .or_insert_with(MultiPoly::zero)
                .add_term(Monomial::from_pairs(rest), c.clone());
        }
        parts
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(m, p)| {
                (
                    m,
                    RF::new(p, self.den.clone()).expect("nonzero denominator"),
                )
            })
            .collect()
    }

    /// Coefficient of the monomial `x^a y^b t^c`.
    pub fn coefficient(&self, a: u32, b: u32, c: u32) -> RF {
        let [x, y, t] = xyt_vars();
        let m = Monomial::from_pairs([(x, a), (y, b), (t, c)]);
        self.coefficients().remove(&m).unwrap_or_else(RF::zero)
    }

    /// Constant coefficients, if no other variable occurs.
    pub fn as_rational_poly(&self) -> Option<MultiPoly> {
        let d = self.den.constant_value()?;
        if self.num.vars().into_iter().any(|v| !is_xyt(v)) {
            return None;
        }
        Some(self.num.scale(&d.recip()))
    }

    fn xyt_grading() -> Grading {
        Grading::xyt()
    }

    /// Largest weighted degree in `x, y, t` (weights 1, 2, 3).
    pub fn weighted_degree(&self) -> Option<i64> {
        self.num.weighted_degree(&Self::xyt_grading())
    }

    pub fn low_weighted_degree(&self) -> Option<i64> {
        self.num.low_weighted_degree(&Self::xyt_grading())
    }

    pub fn homogeneous_part(&self, d: i64) -> Self {
        TrivariatePoly {
            num: self.num.homogeneous_part(&Self::xyt_grading(), d),
            den: self.den.clone(),
        }
    }

    /// Part of lowest weighted degree.
    pub fn lowest_part(&self) -> Self {
        match self.low_weighted_degree() {
            Some(d) => self.homogeneous_part(d),
            None => Self::zero(),
        }
    }

    /// Exponents `(a, b, c)` of the leading monomial `x^a y^b t^c` of the
    /// lowest part, ordered lexicographically with `t > y > x`.
    pub fn lowest_monomial(&self) -> Option<(u32, u32, u32)> {
        let [x, y, t] = xyt_vars();
        self.lowest_part()
            .coefficients()
            .keys()
            .map(|m| (m.exponent(t), m.exponent(y), m.exponent(x)))
            .max()
            .map(|(c, b, a)| (a, b, c))
    }

    /// Keep the terms of weighted degree at most `d`.
    pub fn truncate(&self, d: i64) -> Self {
        let w = Self::xyt_grading();
        let num = MultiPoly::from_terms(
            self.num
                .terms()
                .filter(|(m, _)| m.weighted_degree(&w) <= d)
                .map(|(m, c)| (m.clone(), c.clone())),
        );
        TrivariatePoly {
            num,
            den: self.den.clone(),
        }
    }

    /// Single reduced rational function.
    pub fn to_rf(&self) -> RF {
        RF::new(self.num.clone(), self.den.clone()).expect("nonzero denominator")
    }

    /// Substitute values for the coefficient variables.
    pub fn substitute(&self, v: Var, val: &RF) -> Result<Self> {
        if is_xyt(v) {
            return Err(Error::input(
                "only coefficient variables can be substituted",
            ));
        }
        let n = RF::from_poly(self.num.clone()).substitute_var(v, val)?;
        let d = RF::from_poly(self.den.clone()).substitute_var(v, val)?;
        let q = n.checked_div(&d)?;
        let (num, den) = q.into_parts();
        TrivariatePoly::new(num, den)
    }
}

impl PartialEq for TrivariatePoly {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for TrivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rf())
    }
}

fn hirota_poly(tau: &MultiPoly) -> MultiPoly {
    let [x, y, t] = xyt_vars();
    let tx = tau.derivative(x);
    let txx = tx.derivative(x);
    let txxx = txx.derivative(x);
    let txxxx = txxx.derivative(x);
    let ty = tau.derivative(y);
    let tyy = ty.derivative(y);
    let tt = tau.derivative(t);
    let txt = tx.derivative(t);
    let mut acc = tau * &txxxx;
    acc -= &(&txxx * &tx).scale(&crate::algebra::int(4));
    acc += &(&txx * &txx).scale(&crate::algebra::int(3));
    acc += &(&tx * &tt).scale(&crate::algebra::int(4));
    acc -= &(tau * &txt).scale(&crate::algebra::int(4));
    acc += &(tau * &tyy).scale(&crate::algebra::int(3));
    acc -= &(&ty * &ty).scale(&crate::algebra::int(3));
    acc
}

/// Hirota's bilinear form of the KP equation applied to `tau`. It is
/// quadratic, so the denominator is squared.
pub fn hirota_apply(tau: &TrivariatePoly) -> TrivariatePoly {
    TrivariatePoly {
        num: hirota_poly(&tau.num),
        den: &tau.den * &tau.den,
    }
}
