//! Truncated Laurent series in `z` with rational-function coefficients.
//!
//! A series knows its coefficients for all exponents up to its precision `N`
//! (or for all exponents when exact). Asking for a coefficient beyond `N` is
//! an error rather than a silent zero.

use std::fmt;

use num_traits::Signed;

use super::poly::{frac, Scalar};
use super::ratfunc::RF;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct LaurentSeries {
    /// Exponent of `coeffs[0]`. For the zero series this is `prec + 1`.
    val: i64,
    coeffs: Vec<RF>,
    /// Largest exponent with a known coefficient; `None` means exact.
    prec: Option<i64>,
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl LaurentSeries {
    /// Build from coefficients starting at exponent `val`.
    pub fn new(val: i64, coeffs: Vec<RF>, prec: Option<i64>) -> Self {
        let mut s = LaurentSeries { val, coeffs, prec };
        if let Some(n) = prec {
            let keep = (n - val + 1).max(0) as usize;
            s.coeffs.truncate(keep);
        }
        s.normalize();
        s
    }

    pub fn exact(val: i64, coeffs: Vec<RF>) -> Self {
        Self::new(val, coeffs, None)
    }

    pub fn zero() -> Self {
        LaurentSeries {
            val: 0,
            coeffs: vec![],
            prec: None,
        }
    }

    pub fn one() -> Self {
        Self::monomial(RF::one(), 0)
    }

    pub fn monomial(c: RF, e: i64) -> Self {
        Self::exact(e, vec![c])
    }

    /// Polynomial in `x = 1/z` given by ascending coefficients.
    pub fn from_poly_in_inverse(coeffs: &[RF]) -> Self {
        if coeffs.is_empty() {
            return Self::zero();
        }
        let d = coeffs.len() as i64 - 1;
        Self::exact(-d, coeffs.iter().rev().cloned().collect())
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.val = match self.prec {
                    Some(n) => n + 1,
                    None => 0,
                };
            }
            Some(k) => {
                self.coeffs.drain(..k);
                self.val += k as i64;
                while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                    self.coeffs.pop();
                }
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    pub fn precision(&self) -> Option<i64> {
        self.prec
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the leading nonzero coefficient. For a zero series with
    /// finite precision this is `prec + 1`, a lower bound.
    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn leading_coeff(&self) -> Option<&RF> {
        self.coeffs.first()
    }

    /// Coefficient of `z^n`.
    pub fn coeff(&self, n: i64) -> Result<RF> {
        if let Some(p) = self.prec {
            if n > p {
                return Err(Error::precision(format!(
                    "coefficient of z^{n} requested but series is known only up to z^{p}"
                )));
            }
        }
        if n < self.val {
            return Ok(RF::zero());
        }
        Ok(self
            .coeffs
            .get((n - self.val) as usize)
            .cloned()
            .unwrap_or_else(RF::zero))
    }

    fn coeff_ref(&self, n: i64) -> Option<&RF> {
        if n < self.val {
            return None;
        }
        self.coeffs.get((n - self.val) as usize)
    }

    /// Largest exponent with an explicitly stored coefficient.
    pub fn top(&self) -> i64 {
        match self.prec {
            Some(p) => p,
            None => self.val + self.coeffs.len() as i64 - 1,
        }
    }

    /// Forget everything above `z^n`.
    pub fn truncate(&self, n: i64) -> Self {
        let p = min_prec(self.prec, Some(n));
        Self::new(self.val, self.coeffs.clone(), p)
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            val: self.val + k,
            coeffs: self.coeffs.clone(),
            prec: self.prec.map(|p| p + k),
        }
    }

    pub fn scale(&self, c: &RF) -> Self {
        if c.is_zero() {
            return match self.prec {
                Some(p) => Self::new(0, vec![], Some(p)),
                None => Self::zero(),
            };
        }
        Self::new(
            self.val,
            self.coeffs.iter().map(|a| a * c).collect(),
            self.prec,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = min_prec(self.prec, other.prec);
        let lo = self.val.min(other.val);
        let hi = match prec {
            Some(p) => p,
            None => self.top().max(other.top()),
        };
        let mut coeffs = Vec::new();
        let mut e = lo;
        while e <= hi {
            let c = match (self.coeff_ref(e), other.coeff_ref(e)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => RF::zero(),
            };
            coeffs.push(c);
            e += 1;
        }
        Self::new(lo, coeffs, prec)
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = match (self.prec, other.prec) {
            (Some(a), Some(b)) => Some((a + other.val).min(b + self.val)),
            (Some(a), None) => Some(a + other.val),
            (None, Some(b)) => Some(b + self.val),
            (None, None) => None,
        };
        if self.is_zero() || other.is_zero() {
            return Self::new(0, vec![], prec);
        }
        let lo = self.val + other.val;
        let hi = match prec {
            Some(p) => p,
            None => self.top() + other.top(),
        };
        let mut coeffs = Vec::with_capacity((hi - lo + 1).max(0) as usize);
        for e in lo..=hi {
            let mut terms = Vec::new();
            for (i, a) in self.coeffs.iter().enumerate() {
                let ea = self.val + i as i64;
                if let Some(b) = other.coeff_ref(e - ea) {
                    if !a.is_zero() && !b.is_zero() {
                        terms.push(a * b);
                    }
                }
            }
            coeffs.push(RF::sum(terms.iter()));
        }
        Self::new(lo, coeffs, prec)
    }

    /// Multiplicative inverse known up to `z^n` (or less if `self` is
    /// itself truncated).
    pub fn inverse(&self, n: i64) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroSeries);
        }
        let v = self.val;
        if self.is_exact() && self.coeffs.len() == 1 {
            return Ok(Self::monomial(self.coeffs[0].recip()?, -v));
        }
        let avail = match self.prec {
            Some(p) => p - 2 * v,
            None => n,
        };
        let top = avail.min(n);
        let c0inv = self.coeffs[0].recip()?;
        let len = (top - (-v) + 1).max(0) as usize;
        let mut out: Vec<RF> = Vec::with_capacity(len);
        for k in 0..len {
            if k == 0 {
                out.push(c0inv.clone());
                continue;
            }
            let mut terms = Vec::new();
            for i in 1..=k {
                if let Some(a) = self.coeffs.get(i) {
                    if !a.is_zero() && !out[k - i].is_zero() {
                        terms.push(a * &out[k - i]);
                    }
                }
            }
            let s = RF::sum(terms.iter());
            out.push(-(&s * &c0inv));
        }
        Ok(Self::new(-v, out, Some(top)))
    }

    /// Square root with leading coefficient `+1` (or the positive square root
    /// of a rational leading coefficient), known up to `z^n`.
    pub fn sqrt(&self, n: i64) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NoSquareRoot);
        }
        let v = self.val;
        if v % 2 != 0 {
            return Err(Error::NoSquareRoot);
        }
        let lead = &self.coeffs[0];
        let r0 = if lead.is_one() {
            RF::one()
        } else {
            match lead.constant_value().and_then(|c| rational_sqrt(&c)) {
                Some(r) => RF::constant(r),
                None => return Err(Error::NoSquareRoot),
            }
        };
        let half_v = v / 2;
        let avail = match self.prec {
            Some(p) => p - half_v,
            None => n,
        };
        let top = avail.min(n);
        let len = (top - half_v + 1).max(0) as usize;
        let inv2r0 = RF::constant(frac(1, 2)) * r0.recip()?;
        let mut t: Vec<RF> = Vec::with_capacity(len);
        for k in 0..len {
            if k == 0 {
                t.push(r0.clone());
                continue;
            }
            let s_k = self.coeffs.get(k).cloned().unwrap_or_else(RF::zero);
            let mut terms = Vec::new();
            for i in 1..k {
                if !t[i].is_zero() && !t[k - i].is_zero() {
                    terms.push(&t[i] * &t[k - i]);
                }
            }
            let cross = RF::sum(terms.iter());
            t.push(&(&s_k - &cross) * &inv2r0);
        }
        Ok(Self::new(half_v, t, Some(top)))
    }

    /// Substitute `z -> c*z` for a constant `c`.
    pub fn rescale_variable(&self, c: &RF) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, a) in self.coeffs.iter().enumerate() {
            out.push(a * &c.pow((self.val + i as i64) as i32)?);
        }
        Ok(Self::new(self.val, out, self.prec))
    }

    /// Apply a map to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&RF) -> Result<RF>) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(self.val, coeffs, self.prec))
    }

    pub fn coeffs(&self) -> &[RF] {
        &self.coeffs
    }
}

fn rational_sqrt(c: &Scalar) -> Option<Scalar> {
    if c.is_negative() {
        return None;
    }
    let n = c.numer().sqrt();
    let d = c.denom().sqrt();
    if &(&n * &n) == c.numer() && &(&d * &d) == c.denom() {
        Some(Scalar::new(n, d))
    } else {
        None
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.val + i as i64;
            let neg = c.num().num_terms() == 1 && c.num().is_negative_leading();
            let c = if neg { -c } else { c.clone() };
            let cs = if c.num().num_terms() > 1 {
                format!("({c})")
            } else {
                c.to_string()
            };
            let zs = if e == 1 {
                "z".to_string()
            } else {
                format!("z^{e}")
            };
            let term = match e {
                0 => cs,
                _ if c.is_one() => zs,
                _ => format!("{cs}*{zs}"),
            };
            match (out.is_empty(), neg) {
                (true, true) => out = format!("-{term}"),
                (true, false) => out = term,
                (false, true) => out += &format!(" - {term}"),
                (false, false) => out += &format!(" + {term}"),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        if let Some(p) = self.prec {
            out += &format!(" + O(z^{})", p + 1);
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `1 / (1 - c z)` up to `z^n`.
pub fn geometric(c: &RF, n: i64) -> LaurentSeries {
    let mut coeffs = Vec::with_capacity(n.max(0) as usize + 1);
    let mut acc = RF::one();
    for _ in 0..=n {
        coeffs.push(acc.clone());
        acc = &acc * c;
    }
    LaurentSeries::new(0, coeffs, Some(n))
}

pub fn series_sqrt(s: &LaurentSeries, n: i64) -> Result<LaurentSeries> {
    s.sqrt(n)
}

pub fn series_inverse(s: &LaurentSeries, n: i64) -> Result<LaurentSeries> {
    s.inverse(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> RF {
        RF::constant(frac(n, d))
    }

    #[test]
    fn binomial_sqrt() {
        let s = LaurentSeries::exact(0, vec![RF::one(), RF::one()]);
        let r = s.sqrt(4).unwrap();
        assert_eq!(r.coeff(1).unwrap(), q(1, 2));
        assert_eq!(r.coeff(2).unwrap(), q(-1, 8));
        assert_eq!(r.coeff(3).unwrap(), q(1, 16));
        assert!(r.coeff(5).is_err());
        let sq = LaurentSeries::exact(0, vec![RF::one(), RF::int(2), RF::one()]);
        let r = sq.sqrt(6).unwrap();
        assert_eq!(
            r.truncate(6),
            LaurentSeries::exact(0, vec![RF::one(), RF::one()]).truncate(6)
        );
    }

    #[test]
    fn odd_valuation_has_no_root() {
        let s = LaurentSeries::monomial(RF::one(), 1);
        assert_eq!(s.sqrt(3), Err(Error::NoSquareRoot));
        let s = LaurentSeries::monomial(RF::int(2), 0);
        assert_eq!(s.sqrt(3), Err(Error::NoSquareRoot));
        let s = LaurentSeries::monomial(RF::int(4), 2);
        assert_eq!(s.sqrt(3).unwrap().coeff(1).unwrap(), RF::int(2));
    }

    #[test]
    fn inverse_examples() {
        let s = LaurentSeries::exact(0, vec![RF::one(), RF::int(-1)]);
        let inv = s.inverse(5).unwrap();
        for k in 0..=5 {
            assert!(inv.coeff(k).unwrap().is_one());
        }
        let z2 = LaurentSeries::monomial(RF::one(), 2);
        assert_eq!(
            z2.inverse(5).unwrap(),
            LaurentSeries::monomial(RF::one(), -2)
        );
        assert_eq!(LaurentSeries::zero().inverse(3), Err(Error::ZeroSeries));
    }

    #[test]
    fn precision_bookkeeping() {
        let a = LaurentSeries::new(-2, vec![RF::one(); 5], Some(2));
        let b = LaurentSeries::new(1, vec![RF::one(); 3], Some(3));
        let p = a.mul(&b);
        assert_eq!(p.precision(), Some(1));
        assert!(p.coeff(2).is_err());
    }
}
