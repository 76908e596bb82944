//! Rational functions: reduced quotients of polynomials.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::{owned_ops, MultiPoly, Scalar};
use super::var::Var;
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic in printing order.
/// Zero is stored as `0 / 1`.
#[derive(Clone)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

pub type RF = RationalFunction;

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return RF::zero();
        }
        if let Some(c) = den.constant_value() {
            return RF {
                num: num.scale(&c.recip()),
                den: MultiPoly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        Self::normalize_sign(num, den)
    }

    fn normalize_sign(num: MultiPoly, den: MultiPoly) -> Self {
        let (_, c) = den.leading_term_named().unwrap();
        if c.is_one() {
            RF { num, den }
        } else {
            let inv = c.recip();
            RF {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RF {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> Self {
        RF::from_poly(MultiPoly::one())
    }

    pub fn int(n: i64) -> Self {
        RF::from_poly(MultiPoly::int(n))
    }

    pub fn constant(c: Scalar) -> Self {
        RF::from_poly(MultiPoly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        RF::from_poly(MultiPoly::var(v))
    }

    pub fn named(name: &str) -> Self {
        RF::from_poly(MultiPoly::named(name))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RF {
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

    pub fn into_parts(self) -> (MultiPoly, MultiPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn involves(&self, v: Var) -> bool {
        self.num.involves(v) || self.den.involves(v)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_sign(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return RF::zero();
        }
        RF {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        Ok(RF {
            num: self.num.pow(e as u32),
            den: self.den.pow(e as u32),
        })
    }

    pub fn checked_div(&self, rhs: &RF) -> Result<RF> {
        Ok(self * &rhs.recip()?)
    }

    pub fn derivative(&self, v: Var) -> RF {
        if self.den.is_one() || !self.den.involves(v) {
            return RF {
                num: self.num.derivative(v),
                den: self.den.clone(),
            }
            .renormalized();
        }
        let n = &(&self.num.derivative(v) * &self.den) - &(&self.num * &self.den.derivative(v));
        Self::reduce(n, &self.den * &self.den)
    }

    fn renormalized(self) -> RF {
        if self.num.is_zero() {
            RF::zero()
        } else if self.den.is_one() {
            self
        } else {
            Self::reduce(self.num, self.den)
        }
    }

    /// Substitute rational functions for variables.
    pub fn substitute(&self, subs: &HashMap<Var, RF>) -> Result<RF> {
        let n = eval_poly(&self.num, subs)?;
        let d = eval_poly(&self.den, subs)?;
        n.checked_div(&d)
    }

    pub fn substitute_var(&self, v: Var, val: &RF) -> Result<RF> {
        let mut m = HashMap::new();
        m.insert(v, val.clone());
        self.substitute(&m)
    }

    pub fn eval(&self, vals: &HashMap<Var, Scalar>) -> Result<Scalar> {
        let n = self
            .num
            .eval(vals)
            .ok_or_else(|| Error::input("unassigned variable"))?;
        let d = self
            .den
            .eval(vals)
            .ok_or_else(|| Error::input("unassigned variable"))?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(n / d)
    }

    /// Multiply out against a list and keep things small: `sum_i a_i * b_i`.
    pub fn dot(a: &[RF], b: &[RF]) -> RF {
        let mut acc = RF::zero();
        for (x, y) in a.iter().zip(b) {
            if x.is_zero() || y.is_zero() {
                continue;
            }
            acc = &acc + &(x * y);
        }
        acc
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a RF>) -> RF {
        let mut polys = MultiPoly::zero();
        let mut acc = RF::zero();
        for it in items {
            if it.den.is_one() {
                polys += &it.num;
            } else {
                acc = &acc + it;
            }
        }
        &acc + &RF::from_poly(polys)
    }
}

/// Evaluate a polynomial at rational-function values, clearing the
/// denominators of the substituted values in one step.
fn eval_poly(p: &MultiPoly, subs: &HashMap<Var, RF>) -> Result<RF> {
    let relevant: Vec<Var> = p
        .vars()
        .into_iter()
        .filter(|v| subs.contains_key(v))
        .collect();
    if relevant.iter().all(|v| subs[v].is_poly()) {
        let ps: HashMap<Var, MultiPoly> =
            relevant.iter().map(|v| (*v, subs[v].num.clone())).collect();
        return Ok(RF::from_poly(p.substitute(&ps)));
    }
    let degs: HashMap<Var, u32> = relevant.iter().map(|v| (*v, p.degree_in(*v))).collect();
    let mut num_pows: HashMap<Var, Vec<MultiPoly>> = HashMap::new();
    let mut den_pows: HashMap<Var, Vec<MultiPoly>> = HashMap::new();
    for v in &relevant {
        let d = degs[v] as usize;
        let mut np = vec![MultiPoly::one()];
        let mut dp = vec![MultiPoly::one()];
        for _ in 0..d {
            np.push(np.last().unwrap() * &subs[v].num);
            dp.push(dp.last().unwrap() * &subs[v].den);
        }
        num_pows.insert(*v, np);
        den_pows.insert(*v, dp);
    }
    let mut acc = MultiPoly::zero();
    for (m, c) in p.terms() {
        let mut keep = super::poly::Monomial::one();
        let mut factor = MultiPoly::constant(c.clone());
        let mut seen: Vec<Var> = Vec::new();
        for &(v, e) in m.pairs() {
            if let Some(np) = num_pows.get(&v) {
                factor = &factor * &np[e as usize];
                factor = &factor * &den_pows[&v][(degs[&v] - e) as usize];
                seen.push(v);
            } else {
                keep = keep.mul(&super::poly::Monomial::var(v, e));
            }
        }
        for v in &relevant {
            if !seen.contains(v) {
                factor = &factor * &den_pows[v][degs[v] as usize];
            }
        }
        acc += &factor.mul_monomial(&keep, &Scalar::one());
    }
    let mut den = MultiPoly::one();
    for v in &relevant {
        den = &den * &den_pows[v][degs[v] as usize];
    }
    RF::new(acc, den)
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        (self.num == other.num && self.den == other.den)
            || (&self.num * &other.den) == (&other.num * &self.den)
    }
}

impl Eq for RationalFunction {}

impl Hash for RationalFunction {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        RF::zero()
    }
}

impl<'a> Add<&'a RF> for &'a RF {
    type Output = RF;
    fn add(self, rhs: &RF) -> RF {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RF::from_poly(&self.num + &rhs.num);
        }
        if self.den.is_one() {
            return RF {
                num: &(&self.num * &rhs.den) + &rhs.num,
                den: rhs.den.clone(),
            }
            .renormalized_if_zero();
        }
        if rhs.den.is_one() {
            return RF {
                num: &self.num + &(&rhs.num * &self.den),
                den: self.den.clone(),
            }
            .renormalized_if_zero();
        }
        if self.den == rhs.den {
            return RF::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        if g.is_one() {
            let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            let d = &self.den * &rhs.den;
            return RF { num: n, den: d }.renormalized_if_zero();
        }
        let a = self.den.div_exact(&g).unwrap();
        let b = rhs.den.div_exact(&g).unwrap();
        let n = &(&self.num * &b) + &(&rhs.num * &a);
        RF::reduce(n, &(&a * &b) * &g)
    }
}

impl RationalFunction {
    fn renormalized_if_zero(self) -> RF {
        if self.num.is_zero() {
            RF::zero()
        } else {
            self
        }
    }
}

impl<'a> Sub<&'a RF> for &'a RF {
    type Output = RF;
    fn sub(self, rhs: &RF) -> RF {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RF> for &'a RF {
    type Output = RF;
    fn mul(self, rhs: &RF) -> RF {
        if self.is_zero() || rhs.is_zero() {
            return RF::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RF::from_poly(&self.num * &rhs.num);
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let (an, bd) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (
                self.num.div_exact(&g1).unwrap(),
                rhs.den.div_exact(&g1).unwrap(),
            )
        };
        let (bn, ad) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (
                rhs.num.div_exact(&g2).unwrap(),
                self.den.div_exact(&g2).unwrap(),
            )
        };
        RF::normalize_sign(&an * &bn, &ad * &bd)
    }
}

impl<'a> Div<&'a RF> for &'a RF {
    type Output = RF;
    /// Panics on division by zero; use [`RationalFunction::checked_div`] otherwise.
    fn div(self, rhs: &RF) -> RF {
        self.checked_div(rhs)
            .expect("division by zero rational function")
    }
}

impl Neg for &RF {
    type Output = RF;
    fn neg(self) -> RF {
        RF {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RF {
    type Output = RF;
    fn neg(self) -> RF {
        RF {
            num: -self.num,
            den: self.den,
        }
    }
}

owned_ops!(RF, Add add, Sub sub, Mul mul, Div div);

impl From<MultiPoly> for RF {
    fn from(p: MultiPoly) -> Self {
        RF::from_poly(p)
    }
}

impl From<Scalar> for RF {
    fn from(c: Scalar) -> Self {
        RF::constant(c)
    }
}

impl From<i64> for RF {
    fn from(n: i64) -> Self {
        RF::int(n)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let n = if self.num.num_terms() > 1 {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        let simple_den = self.den.is_monomial() && {
            let (m, c) = self.den.terms().next().unwrap();
            c.is_one() && m.pairs().len() == 1
        };
        if simple_den {
            write!(f, "{n}/{}", self.den)
        } else {
            write!(f, "{n}/({})", self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_rf;

    fn r(s: &str) -> RF {
        parse_rf(s).unwrap()
    }

    #[test]
    fn reduces_and_normalizes() {
        let a = r("(x^2 - 1)/(2*x + 2)");
        assert_eq!(a.num(), r("x/2 - 1/2").num());
        assert!(a.is_poly());
        let b = r("1/(2 - x)");
        assert_eq!(b.to_string(), "-1/(x - 2)");
    }

    #[test]
    fn field_arithmetic() {
        let a = r("1/(k1 - k2)");
        let b = r("1/(k2 - k1)");
        assert!((&a + &b).is_zero());
        let c = &r("x/(x + 1)") + &r("1/(x + 1)");
        assert!(c.is_one());
        let d = &r("(a + b)/(a - b)") * &r("(a - b)/(a + b)^2");
        assert_eq!(d, r("1/(a + b)"));
        assert!(r("0").recip().is_err());
    }

    #[test]
    fn substitution_and_derivative() {
        let f = r("x^2/(x - y)");
        let g = f.substitute_var(Var::new("x"), &r("1/y")).unwrap();
        assert_eq!(g, r("1/(y - y^3)"));
        let d = r("1/x").derivative(Var::new("x"));
        assert_eq!(d, r("-1/x^2"));
    }
}
