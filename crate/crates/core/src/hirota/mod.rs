//! Hirota varieties of lattice configurations: the quartic `P`, the pair-sum
//! map `C^[2]`, defining equations, residuals and parametrizations.

mod expsum;
mod params;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use crate::algebra::{int, MultiPoly, RF};
use crate::error::{Error, Result};

pub use expsum::{gauge_equivalence, ExpSum, ExpTerm, Gauge};
pub use params::{
    cube, cube_param, prism, prism_param, simplex, simplex_param, simplex_substitution, square,
    theorem35_generators,
};

/// `x^4 - 4 x t + 3 y^2`.
pub fn p_quartic<T>(x: &T, y: &T, t: &T) -> T
where
    T: Clone + From<i64>,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    let x2 = x * x;
    let x4 = &x2 * &x2;
    let xt = x * t;
    let y2 = y * y;
    let four = T::from(4);
    let three = T::from(3);
    &(&x4 - &(&four * &xt)) + &(&three * &y2)
}

/// Ordered list of distinct points in `Z^g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeConfiguration {
    g: usize,
    points: Vec<Vec<i64>>,
}

impl LatticeConfiguration {
    pub fn new(g: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::input("configuration needs at least one point"));
        }
        if let Some(p) = points.iter().find(|p| p.len() != g) {
            return Err(Error::input(format!(
                "point {p:?} does not have {g} coordinates"
            )));
        }
        for i in 0..points.len() {
            if points[..i].contains(&points[i]) {
                return Err(Error::input(format!("point {:?} is repeated", points[i])));
            }
        }
        Ok(LatticeConfiguration { g, points })
    }

    pub fn dim(&self) -> usize {
        self.g
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Name of the coefficient attached to point `k`: `a` followed by the
    /// coordinates when they are all single digits, else `a` and the index.
    pub fn coefficient_name(&self, k: usize) -> String {
        if self.points.iter().flatten().all(|&c| (0..10).contains(&c)) {
            let digits: String = self.points[k].iter().map(|c| c.to_string()).collect();
            format!("a{digits}")
        } else {
            format!("a{}", k + 1)
        }
    }

    pub fn coefficient_vars(&self) -> Vec<RF> {
        (0..self.len())
            .map(|k| RF::named(&self.coefficient_name(k)))
            .collect()
    }
}

/// Coefficients `a_k` attached to a configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaSum {
    pub config: LatticeConfiguration,
    pub a: Vec<RF>,
}

impl ThetaSum {
    pub fn new(config: LatticeConfiguration, a: Vec<RF>) -> Result<Self> {
        if a.len() != config.len() {
            return Err(Error::input(format!(
                "{} coefficients for {} points",
                a.len(),
                config.len()
            )));
        }
        if a.iter().any(|x| x.is_zero()) {
            return Err(Error::input("theta coefficients must be nonzero"));
        }
        Ok(ThetaSum { config, a })
    }

    /// Symbolic coefficients named by `coefficient_name`.
    pub fn generic(config: LatticeConfiguration) -> Self {
        let a = config.coefficient_vars();
        ThetaSum { config, a }
    }
}

/// Frequency vectors `(u, v, w)`, a point of weighted projective space.
#[derive(Clone, Debug)]
pub struct WeightedPoint {
    pub u: Vec<RF>,
    pub v: Vec<RF>,
    pub w: Vec<RF>,
}

impl WeightedPoint {
    pub fn new(u: Vec<RF>, v: Vec<RF>, w: Vec<RF>) -> Result<Self> {
        if u.len() != v.len() || v.len() != w.len() {
            return Err(Error::input("u, v, w must have equal length"));
        }
        if u.iter().chain(&v).chain(&w).all(|x| x.is_zero()) {
            return Err(Error::input("the zero vector is not a point"));
        }
        Ok(WeightedPoint { u, v, w })
    }

    /// Symbolic point with coordinates `u1.., v1.., w1..`.
    pub fn generic(g: usize) -> Self {
        let names = |p: &str| (1..=g).map(|i| RF::named(&format!("{p}{i}"))).collect();
        WeightedPoint {
            u: names("u"),
            v: names("v"),
            w: names("w"),
        }
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }

    /// `(c.u, c.v, c.w)`.
    pub fn pair(&self, c: &[i64]) -> [RF; 3] {
        let lin = |xs: &[RF]| {
            let mut s = RF::zero();
            for (ci, x) in c.iter().zip(xs) {
                if *ci != 0 {
                    s = &s + &x.scale(&int(*ci));
                }
            }
            s
        };
        [lin(&self.u), lin(&self.v), lin(&self.w)]
    }

    /// Equality in weighted projective space: some `l != 0` has
    /// `(u', v', w') = (l u, l^2 v, l^3 w)`.
    pub fn weighted_eq(&self, other: &WeightedPoint) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let ratio = |a: &[RF], b: &[RF]| -> Option<Option<RF>> {
            // None: inconsistent zero pattern; Some(None): all zero.
            let mut r: Option<RF> = None;
            for (x, y) in a.iter().zip(b) {
                match (x.is_zero(), y.is_zero()) {
                    (true, true) => {}
                    (false, false) => {
                        let q = y / x;
                        if let Some(r0) = &r {
                            if *r0 != q {
                                return None;
                            }
                        } else {
                            r = Some(q);
                        }
                    }
                    _ => return None,
                }
            }
            Some(r)
        };
        let (Some(ru), Some(rv), Some(rw)) = (
            ratio(&self.u, &other.u),
            ratio(&self.v, &other.v),
            ratio(&self.w, &other.w),
        ) else {
            return false;
        };
        match (ru, rv, rw) {
            (Some(l), rv, rw) => {
                rv.is_none_or(|r| r == &l * &l) && rw.is_none_or(|r| r == &(&l * &l) * &l)
            }
            (None, Some(l2), Some(l3)) => {
                let l = &l3 / &l2;
                &l * &l == l2
            }
            _ => true,
        }
    }
}

/// Fibers of the pair-sum map `(k, l) -> c_k + c_l`, `k < l`, keyed by the
/// sum in lexicographic order.
pub fn csum_index(config: &LatticeConfiguration) -> BTreeMap<Vec<i64>, Vec<(usize, usize)>> {
    let pts = config.points();
    let mut out: BTreeMap<Vec<i64>, Vec<(usize, usize)>> = BTreeMap::new();
    for k in 0..pts.len() {
        for l in k + 1..pts.len() {
            let d: Vec<i64> = pts[k].iter().zip(&pts[l]).map(|(a, b)| a + b).collect();
            out.entry(d).or_default().push((k, l));
        }
    }
    out
}

/// One defining equation of the Hirota variety.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    /// Lattice point of `C^[2]` the equation is attached to.
    pub d: Vec<i64>,
    pub pairs: Vec<(usize, usize)>,
    pub unique: bool,
    pub poly: MultiPoly,
    /// Further uniquely attained points giving the same quartic.
    pub also: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HirotaIdeal {
    pub generators: Vec<Generator>,
}

impl HirotaIdeal {
    pub fn polys(&self) -> Vec<&MultiPoly> {
        self.generators.iter().map(|g| &g.poly).collect()
    }

    /// Comma separated generator list.
    pub fn to_ideal_string(&self) -> String {
        self.generators
            .iter()
            .map(|g| g.poly.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn pair_quartic(config: &LatticeConfiguration, point: &WeightedPoint, k: usize, l: usize) -> RF {
    let pts = config.points();
    let diff: Vec<i64> = pts[k].iter().zip(&pts[l]).map(|(a, b)| a - b).collect();
    let [x, y, t] = point.pair(&diff);
    p_quartic(&x, &y, &t)
}

fn to_poly(r: RF) -> MultiPoly {
    r.as_poly()
        .cloned()
        .expect("generic data gives polynomials")
}

/// Quartics for unique pairs (deduplicated) and `sum P_kl a_k a_l` for the
/// other points of `C^[2]`.
pub fn hirota_generators(config: &LatticeConfiguration) -> HirotaIdeal {
    let point = WeightedPoint::generic(config.dim());
    let a = config.coefficient_vars();
    let mut generators: Vec<Generator> = Vec::new();
    for (d, pairs) in csum_index(config) {
        if pairs.len() == 1 {
            let (k, l) = pairs[0];
            let poly = to_poly(pair_quartic(config, &point, k, l));
            if let Some(prev) = generators.iter_mut().find(|g| g.unique && g.poly == poly) {
                prev.also.push(d);
                continue;
            }
            generators.push(Generator {
                d,
                pairs,
                unique: true,
                poly,
                also: vec![],
            });
        } else {
            let mut s = RF::zero();
            for &(k, l) in &pairs {
                s = &s + &(&pair_quartic(config, &point, k, l) * &(&a[k] * &a[l]));
            }
            generators.push(Generator {
                d,
                pairs,
                unique: false,
                poly: to_poly(s),
                also: vec![],
            });
        }
    }
    HirotaIdeal { generators }
}

/// Coefficient of each exponential `exp[(d.u) x + (d.v) y + (d.w) t]`, `d` in
/// `C^[2]`, after applying the Hirota operator to the theta sum.
pub fn hirota_residual(theta: &ThetaSum, point: &WeightedPoint) -> Result<BTreeMap<Vec<i64>, RF>> {
    if point.dim() != theta.config.dim() {
        return Err(Error::input(
            "point and configuration have different dimensions",
        ));
    }
    let mut out = BTreeMap::new();
    for (d, pairs) in csum_index(&theta.config) {
        let mut s = RF::zero();
        for (k, l) in pairs {
            s = &s + &(&pair_quartic(&theta.config, point, k, l) * &(&theta.a[k] * &theta.a[l]));
        }
        out.insert(d, s);
    }
    Ok(out)
}

/// True when every residual coefficient is zero.
pub fn residual_vanishes(res: &BTreeMap<Vec<i64>, RF>) -> bool {
    res.values().all(|r| r.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_rf;

    #[test]
    fn quartic_values() {
        let r = |s: &str| parse_rf(s).unwrap();
        assert!(p_quartic(&RF::int(1), &RF::int(1), &RF::int(1)).is_zero());
        let p = p_quartic(&r("k1 - k2"), &r("k1^2 - k2^2"), &r("k1^3 - k2^3"));
        assert!(p.is_zero());
        assert_eq!(p_quartic(&RF::int(2), &RF::int(0), &RF::int(1)), RF::int(8));
    }

    #[test]
    fn weighted_equality() {
        let r = |s: &str| parse_rf(s).unwrap();
        let p = WeightedPoint::new(vec![r("1")], vec![r("2")], vec![r("3")]).unwrap();
        let q = WeightedPoint::new(vec![r("2")], vec![r("8")], vec![r("24")]).unwrap();
        let bad = WeightedPoint::new(vec![r("2")], vec![r("4")], vec![r("24")]).unwrap();
        assert!(p.weighted_eq(&q));
        assert!(!p.weighted_eq(&bad));
    }
}
