//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::var::Var;

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Render a scalar as `p` or `p/q`.
pub fn scalar_string(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Sparse exponent vector, sorted by variable id, no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, u32); 4]>);

/// Lexicographic comparison of sparse exponent vectors sorted by key, where a
/// smaller key is the more significant variable.
pub(crate) fn lex_cmp<K: Ord + Copy>(a: &[(K, u32)], b: &[(K, u32)]) -> Ordering {
    for i in 0.. {
        match (a.get(i), b.get(i)) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(&(ka, ea)), Some(&(kb, eb))) => {
                if ka != kb {
                    return if ka < kb {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    };
                }
                if ea != eb {
                    return ea.cmp(&eb);
                }
            }
        }
    }
    unreachable!()
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(smallvec::smallvec![(v, e)])
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut m = Monomial::one();
        for (v, e) in pairs {
            m = m.mul(&Monomial::var(v, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> u32 {
        match self.0.binary_search_by(|p| p.0.cmp(&v)) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn weighted_degree(&self, w: &Grading) -> i64 {
        self.0.iter().map(|&(v, e)| w.weight(v) * e as i64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::new();
        for &(v, e) in &self.0 {
            let f = other.exponent(v);
            if f > 0 {
                out.push((v, e.min(f)));
            }
        }
        Monomial(out)
    }

    /// Split off the exponent of `v`.
    pub fn split(&self, v: Var) -> (u32, Monomial) {
        let mut rest = self.clone();
        match rest.0.binary_search_by(|p| p.0.cmp(&v)) {
            Ok(i) => {
                let e = rest.0.remove(i).1;
                (e, rest)
            }
            Err(_) => (0, rest),
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_monomial(self).unwrap_or_else(|| "1".into()))
    }
}

fn render_monomial(m: &Monomial) -> Option<String> {
    if m.is_one() {
        return None;
    }
    let mut pairs: Vec<(Var, u32)> = m.0.to_vec();
    pairs.sort_by(|a, b| a.0.cmp_named(b.0));
    let parts: Vec<String> = pairs
        .iter()
        .map(|&(v, e)| {
            if e == 1 {
                v.to_string()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect();
    Some(parts.join("*"))
}

/// Integer weights per variable; unlisted variables get the default weight.
#[derive(Clone, Debug)]
pub struct Grading {
    weights: HashMap<Var, i64>,
    default: i64,
}

impl Grading {
    pub fn new(default: i64) -> Self {
        Grading {
            weights: HashMap::new(),
            default,
        }
    }

    pub fn with(mut self, v: Var, w: i64) -> Self {
        self.weights.insert(v, w);
        self
    }

    /// Weights 1, 2, 3 on `x`, `y`, `t`; everything else weight 0.
    pub fn xyt() -> Self {
        Grading::new(0)
            .with(Var::new("x"), 1)
            .with(Var::new("y"), 2)
            .with(Var::new("t"), 3)
    }

    pub fn weight(&self, v: Var) -> i64 {
        *self.weights.get(&v).unwrap_or(&self.default)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        MultiPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        MultiPoly::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        MultiPoly::constant(int(n))
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::term(Monomial::var(v, 1), Scalar::one())
    }

    pub fn named(name: &str) -> Self {
        MultiPoly::var(Var::new(name))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Build `sum c_k v^k` from a dense coefficient list.
    pub fn from_univariate(v: Var, coeffs: &[MultiPoly]) -> Self {
        let mut out = MultiPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let m = Monomial::var(v, k as u32);
            for (cm, cc) in c.terms() {
                out.add_term(cm.mul(&m), cc.clone());
            }
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(
        &self,
    ) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if self.terms.is_empty() {
            return Some(Scalar::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    /// Coefficient of the monomial `1`.
    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            for &(v, _) in m.pairs() {
                out.insert(v);
            }
        }
        out
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Largest weighted degree of a term; `None` for the zero polynomial.
    pub fn weighted_degree(&self, w: &Grading) -> Option<i64> {
        self.terms.keys().map(|m| m.weighted_degree(w)).max()
    }

    /// Smallest weighted degree of a term; `None` for the zero polynomial.
    pub fn low_weighted_degree(&self, w: &Grading) -> Option<i64> {
        self.terms.keys().map(|m| m.weighted_degree(w)).min()
    }

    /// The sum of the terms of weighted degree `d`.
    pub fn homogeneous_part(&self, w: &Grading, d: i64) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weighted_degree(w) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self, w: &Grading) -> bool {
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(w));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            if e > 0 {
                out.add_term(rest.mul(&Monomial::var(v, e - 1)), c * int(e as i64));
            }
        }
        out
    }

    /// Coefficients of `self` viewed as a polynomial in `v`, indexed by degree.
    pub fn coefficients_in(&self, v: Var) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero(); self.degree_in(v) as usize + 1];
        if self.is_zero() {
            return vec![];
        }
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            out[e as usize].terms.insert(rest, c.clone());
        }
        out
    }

    pub fn leading_coeff_in(&self, v: Var) -> MultiPoly {
        self.coefficients_in(v)
            .pop()
            .unwrap_or_else(MultiPoly::zero)
    }

    /// Replace variables by polynomials.
    pub fn substitute(&self, subs: &HashMap<Var, MultiPoly>) -> MultiPoly {
        let mut powers: HashMap<Var, Vec<MultiPoly>> = HashMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut keep = Monomial::one();
            let mut factor = MultiPoly::constant(c.clone());
            for &(v, e) in m.pairs() {
                if let Some(val) = subs.get(&v) {
                    let table = powers.entry(v).or_insert_with(|| vec![MultiPoly::one()]);
                    while table.len() <= e as usize {
                        let next = table.last().unwrap() * val;
                        table.push(next);
                    }
                    factor = &factor * &table[e as usize];
                } else {
                    keep = keep.mul(&Monomial::var(v, e));
                }
            }
            for (fm, fc) in factor.terms {
                out.add_term(fm.mul(&keep), fc);
            }
        }
        out
    }

    pub fn substitute_var(&self, v: Var, val: &MultiPoly) -> MultiPoly {
        let mut map = HashMap::new();
        map.insert(v, val.clone());
        self.substitute(&map)
    }

    /// Evaluate at scalars; every variable must be assigned.
    pub fn eval(&self, vals: &HashMap<Var, Scalar>) -> Option<Scalar> {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let x = vals.get(&v)?;
                t *= num_traits::pow(x.clone(), e as usize);
            }
            acc += t;
        }
        Some(acc)
    }

    /// Terms sorted in the printing order: graded, then lexicographic with
    /// variables compared by name.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Scalar)> {
        let vars: Vec<Var> = {
            let mut v: Vec<Var> = self.vars().into_iter().collect();
            v.sort_by(|a, b| a.cmp_named(*b));
            v
        };
        let rank: HashMap<Var, u32> = vars
            .iter()
            .enumerate()
            .map(|(i, v)| (*v, i as u32))
            .collect();
        let mut keyed: Vec<(u32, Vec<(u32, u32)>, (&Monomial, &Scalar))> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut k: Vec<(u32, u32)> =
                    m.pairs().iter().map(|&(v, e)| (rank[&v], e)).collect();
                k.sort_unstable();
                (m.total_degree(), k, (m, c))
            })
            .collect();
        keyed.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| lex_cmp(&b.1, &a.1)));
        keyed.into_iter().map(|k| k.2).collect()
    }

    /// First term in printing order.
    pub fn leading_term_named(&self) -> Option<(Monomial, Scalar)> {
        self.sorted_terms()
            .first()
            .map(|(m, c)| ((*m).clone(), (*c).clone()))
    }

    /// Scale so that the leading term (printing order) has coefficient 1.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term_named() {
            None => MultiPoly::zero(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Smallest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        let mut g = first.clone();
        for m in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    pub fn div_monomial(&self, mono: &Monomial) -> Option<MultiPoly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.div(mono)?, c.clone());
        }
        Some(MultiPoly { terms })
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        if d.is_monomial() {
            let (m, c) = d.terms.iter().next().unwrap();
            return self.div_monomial(m).map(|p| p.scale(&c.recip()));
        }
        let (lm, lc) = d
            .terms
            .iter()
            .next_back()
            .map(|(m, c)| (m.clone(), c.clone()))
            .unwrap();
        let lc_inv = lc.recip();
        let mut r = self.clone();
        let mut q = MultiPoly::zero();
        while let Some((rm, rc)) = r
            .terms
            .iter()
            .next_back()
            .map(|(m, c)| (m.clone(), c.clone()))
        {
            let qm = rm.div(&lm)?;
            let qc = &rc * &lc_inv;
            for (m, c) in &d.terms {
                r.add_term(m.mul(&qm), -(c * &qc));
            }
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Largest coefficient height, a cheap size measure.
    pub fn height(&self) -> usize {
        self.terms
            .values()
            .map(|c| (c.numer().bits() + c.denom().bits()) as usize)
            .max()
            .unwrap_or(0)
    }

    /// Clear denominators: returns `(m, p)` with `p = m * self` having integer
    /// coefficients with content 1, up to sign.
    pub fn integer_primitive(&self) -> (Scalar, MultiPoly) {
        use num_integer::Integer;
        if self.is_zero() {
            return (Scalar::one(), MultiPoly::zero());
        }
        let mut l = BigInt::one();
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
        }
        for c in self.terms.values() {
            let n = c.numer() * (&l / c.denom());
            g = g.gcd(&n);
        }
        let m = BigRational::new(l, g.abs());
        (m.clone(), self.scale(&m))
    }

    pub fn is_negative_leading(&self) -> bool {
        self.leading_term_named()
            .is_some_and(|(_, c)| c.is_negative())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.sorted_terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match render_monomial(m) {
                None => write!(f, "{}", scalar_string(&abs))?,
                Some(ms) => {
                    if abs.is_one() {
                        write!(f, "{ms}")?
                    } else {
                        write!(f, "{}*{ms}", scalar_string(&abs))?
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        let mut acc: HashMap<Monomial, Scalar> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(e) => *e += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        MultiPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

macro_rules! owned_ops {
    ($t:ty, $($tr:ident $f:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $f(self, rhs: $t) -> $t { (&self).$f(&rhs) }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $f(self, rhs: &'a $t) -> $t { (&self).$f(rhs) }
        }
        impl<'a> $tr<$t> for &'a $t {
            type Output = $t;
            fn $f(self, rhs: $t) -> $t { self.$f(&rhs) }
        }
    )*};
}
pub(crate) use owned_ops;

owned_ops!(MultiPoly, Add add, Sub sub, Mul mul);

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl From<Scalar> for MultiPoly {
    fn from(c: Scalar) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<i64> for MultiPoly {
    fn from(n: i64) -> Self {
        MultiPoly::int(n)
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}
