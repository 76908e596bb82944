//! Hyperelliptic curves `y^2 = f(x)` with `deg f = 2g + 2`, their
//! Riemann-Roch frames at a point `p` over infinity, and the degeneration to
//! `(1, n)`-solitons.

use std::collections::HashMap;

use crate::algebra::{gcd, LaurentSeries, MultiPoly, Scalar, Var, RF};
use crate::error::{Error, Result};
use crate::sato::{
    plucker_vector, tau_truncated, Frame, Partition, SolitonData, Tail, TrivariatePoly,
};

/// Name of the deformation parameter.
pub const EPS: &str = "eps";

pub fn eps() -> Var {
    Var::new(EPS)
}

/// `y^2 = f(x)` with monic squarefree `f` of degree `2g + 2`; `p` is the
/// point over `x = infinity` where `y ~ +x^(g+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperellipticCurve {
    genus: usize,
    /// Ascending coefficients of `f`.
    f: Vec<RF>,
}

fn poly_in(v: Var, coeffs: &[RF]) -> (MultiPoly, MultiPoly) {
    let mut den = MultiPoly::one();
    for c in coeffs {
        let g = gcd(&den, c.den());
        den = &den * &c.den().div_exact(&g).expect("gcd divides");
    }
    let parts: Vec<MultiPoly> = coeffs
        .iter()
        .map(|c| c.num() * &den.div_exact(c.den()).expect("multiple"))
        .collect();
    (MultiPoly::from_univariate(v, &parts), den)
}

impl HyperellipticCurve {
    /// From ascending coefficients of `f`.
    pub fn new(f: Vec<RF>) -> Result<Self> {
        let mut f = f;
        while f.last().is_some_and(|c| c.is_zero()) {
            f.pop();
        }
        let deg = f.len().saturating_sub(1);
        if deg % 2 == 1 {
            return Err(Error::input(format!(
                "degree {deg} model has one point at infinity; move a branch point to infinity to get an even-degree model"
            )));
        }
        if deg < 4 {
            return Err(Error::input("need deg f >= 4 (genus at least 1)"));
        }
        if !f[deg].is_one() {
            return Err(Error::input("f must be monic"));
        }
        let x = Var::new("x_curve");
        if f.iter().any(|c| c.involves(x)) {
            return Err(Error::input(
                "coefficients may not use the variable x_curve",
            ));
        }
        let (p, _) = poly_in(x, &f);
        if gcd(&p, &p.derivative(x)).degree_in(x) > 0 {
            return Err(Error::Coincident("f has a repeated root".into()));
        }
        Ok(HyperellipticCurve {
            genus: deg / 2 - 1,
            f,
        })
    }

    /// `f = prod (x - r_i)`.
    pub fn from_roots(roots: &[RF]) -> Result<Self> {
        let mut f = vec![RF::one()];
        for r in roots {
            let mut next = vec![RF::zero(); f.len() + 1];
            for (i, c) in f.iter().enumerate() {
                next[i + 1] = &next[i + 1] + c;
                next[i] = &next[i] - &(c * r);
            }
            f = next;
        }
        Self::new(f)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn coefficients(&self) -> &[RF] {
        &self.f
    }

    pub fn eval(&self, x: &RF) -> RF {
        self.f
            .iter()
            .rev()
            .fold(RF::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn contains(&self, x: &RF, y: &RF) -> bool {
        (y * y) == self.eval(x)
    }

    /// Substitute a value for a coefficient variable.
    pub fn specialize(&self, v: Var, val: &RF) -> Result<Self> {
        let f = self
            .f
            .iter()
            .map(|c| c.substitute_var(v, val))
            .collect::<Result<Vec<_>>>()?;
        Self::new(f)
    }

    /// `z^(2g+2) f(1/z)`, whose constant term is 1.
    fn reversed(&self) -> LaurentSeries {
        LaurentSeries::exact(0, self.f.iter().rev().cloned().collect())
    }
}

/// `alpha_0 .. alpha_n` with `y = z^-(g+1) sum alpha_i z^i` at `p`.
pub fn alpha_series(curve: &HyperellipticCurve, n: usize) -> Result<Vec<RF>> {
    let s = curve.reversed().sqrt(n as i64)?;
    (0..=n as i64).map(|i| s.coeff(i)).collect()
}

/// Divisors of degree `g - 1`: `(g-1)p`, `p1 + (g-2)p`, `p1 + p2 + (g-3)p`,
/// with affine points `(c, y)`.
#[derive(Clone, Debug, PartialEq)]
pub enum CurveDivisor {
    D0,
    D1([RF; 2]),
    D2([RF; 2], [RF; 2]),
}

impl CurveDivisor {
    fn points(&self) -> Vec<&[RF; 2]> {
        match self {
            CurveDivisor::D0 => vec![],
            CurveDivisor::D1(a) => vec![a],
            CurveDivisor::D2(a, b) => vec![a, b],
        }
    }

    /// Multiplicity of `p`.
    pub fn order_at_p(&self, genus: usize) -> i64 {
        genus as i64 - 1 - self.points().len() as i64
    }

    fn validate(&self, curve: &HyperellipticCurve) -> Result<()> {
        let pts = self.points();
        if curve.genus < 2 && !pts.is_empty() {
            return Err(Error::input("divisors with affine points need genus >= 2"));
        }
        for pt in &pts {
            if !curve.contains(&pt[0], &pt[1]) {
                return Err(Error::input(format!(
                    "({}, {}) is not on the curve",
                    pt[0], pt[1]
                )));
            }
            if pt[1].is_zero() {
                return Err(Error::input("affine points must not be branch points"));
            }
        }
        if pts.len() == 2 && pts[0][0] == pts[1][0] {
            return Err(Error::input(
                "the two points must have distinct x-coordinates",
            ));
        }
        Ok(())
    }
}

/// Which point over infinity to expand at: `p` itself, or its conjugate
/// where `y ~ -x^(g+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    P,
    Conjugate,
}

struct Expander<'a> {
    curve: &'a HyperellipticCurve,
    alpha: Vec<RF>,
    /// `y` in the chosen branch, known up to `z^(n - g - 1)`.
    y: LaurentSeries,
    n: i64,
}

impl<'a> Expander<'a> {
    fn new(curve: &'a HyperellipticCurve, n: usize, branch: Branch) -> Result<Self> {
        let alpha = alpha_series(curve, n)?;
        let g = curve.genus as i64;
        let mut y = LaurentSeries::new(-(g + 1), alpha.clone(), Some(n as i64 - g - 1));
        if branch == Branch::Conjugate {
            y = y.neg();
        }
        Ok(Expander {
            curve,
            alpha,
            y,
            n: n as i64,
        })
    }

    /// `g_m(x) = sum_{j <= m} alpha_j x^(m - j)` as an exact series in `z`.
    fn g_m(&self, m: usize) -> LaurentSeries {
        LaurentSeries::exact(-(m as i64), self.alpha[..=m].to_vec())
    }

    /// `g_m(c)`.
    fn g_m_at(&self, m: usize, c: &RF) -> RF {
        self.alpha[..=m]
            .iter()
            .fold(RF::zero(), |acc, a| &(&acc * c) + a)
    }

    /// `f_m = (x^(m-g-1) y + g_m(x)) / 2`, pole of order `m` at `p`.
    fn f(&self, m: usize) -> Result<LaurentSeries> {
        let g = self.curve.genus;
        if (m as i64) > self.n {
            return Err(Error::precision(format!(
                "f_{m} needs alpha up to {m}, have {}",
                self.n
            )));
        }
        let s = self.y.shift(-((m - g - 1) as i64)).add(&self.g_m(m));
        Ok(s.scale(&RF::constant(crate::algebra::frac(1, 2))))
    }

    /// `(f_{g+1}(x, y) - f_{g+1}(c, -y_c)) / (x - c)`.
    fn h(&self, pt: &[RF; 2]) -> Result<LaurentSeries> {
        let g = self.curve.genus;
        let m = g + 1;
        let constant = &(&pt[1] - &self.g_m_at(m, &pt[0])).scale(&crate::algebra::frac(1, 2));
        let num = self
            .f(m)?
            .add(&LaurentSeries::monomial(constant.clone(), 0));
        // 1 / (x - c) = z / (1 - c z)
        let inv = LaurentSeries::exact(0, vec![RF::one(), -&pt[0]])
            .inverse(self.n + 2)?
            .shift(1);
        Ok(num.mul(&inv))
    }
}

/// Laurent expansions of a basis of `H^0(X, D + infinity p)`:
/// `1`, then `h_j` for the affine points of `D`, then `f_{g+1}, f_{g+2}, ...`,
/// `count` elements in all, using `alpha` up to `n`.
pub fn basis_u(
    curve: &HyperellipticCurve,
    d: &CurveDivisor,
    count: usize,
    n: usize,
    branch: Branch,
) -> Result<Vec<LaurentSeries>> {
    d.validate(curve)?;
    let e = Expander::new(curve, n, branch)?;
    let mut out = vec![LaurentSeries::one()];
    for pt in d.points() {
        if out.len() < count {
            out.push(e.h(pt)?);
        }
    }
    let mut m = curve.genus + 1;
    while out.len() < count {
        out.push(e.f(m)?);
        m += 1;
    }
    out.truncate(count);
    Ok(out)
}

/// Columns and series order large enough for `tau[n]` with a margin.
fn frame_size(curve: &HyperellipticCurve, n: usize) -> (usize, usize) {
    let columns = n + 4;
    (columns, 2 * n + 2 * curve.genus + 12)
}

/// The frame of `iota(H^0(X, D + infinity p))`, `iota` being multiplication by
/// `z^(m+1)` with `m` the multiplicity of `p` in `D`, sized for `tau[n]`.
pub fn frame_from_curve(curve: &HyperellipticCurve, d: &CurveDivisor, n: usize) -> Result<Frame> {
    let (columns, order) = frame_size(curve, n);
    let shift = d.order_at_p(curve.genus) + 1;
    let basis = basis_u(curve, d, columns, order, Branch::P)?;
    let cols: Vec<LaurentSeries> = basis.iter().map(|s| s.shift(shift)).collect();
    let frame = Frame::new(cols, Tail::Truncated)?;
    if let Some(r) = frame.row_max() {
        if r < n as i64 + 1 {
            return Err(Error::precision(format!(
                "frame known through row {r}, need {}",
                n + 1
            )));
        }
    }
    Ok(frame)
}

/// Truncated tau function `tau[n]` of the curve.
pub fn tau_from_curve(
    curve: &HyperellipticCurve,
    d: &CurveDivisor,
    n: usize,
) -> Result<TrivariatePoly> {
    tau_truncated(&frame_from_curve(curve, d, n)?, n)
}

/// `y^2 = prod (x - kappa_i)(x - kappa_i - eps)`, of genus `n - 1`.
pub fn degeneration_family(kappa: &[RF]) -> Result<HyperellipticCurve> {
    check_distinct(kappa)?;
    if kappa.len() < 2 {
        return Err(Error::input("need at least two kappa"));
    }
    let e = RF::var(eps());
    let roots: Vec<RF> = kappa.iter().flat_map(|k| [k.clone(), k + &e]).collect();
    HyperellipticCurve::from_roots(&roots)
}

fn check_distinct(kappa: &[RF]) -> Result<()> {
    for i in 0..kappa.len() {
        for j in i + 1..kappa.len() {
            if kappa[i] == kappa[j] {
                return Err(Error::Coincident(format!(
                    "kappa_{} = kappa_{}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// `h(z) = prod (1 - kappa_i z)`.
pub fn h_polynomial(kappa: &[RF]) -> LaurentSeries {
    kappa.iter().fold(LaurentSeries::one(), |acc, k| {
        acc.mul(&LaurentSeries::exact(0, vec![RF::one(), -k]))
    })
}

/// Frame of `iota{1, z^-n h, z^-(n+1) h, ...}` (the `eps = 0` limit of the
/// degeneration family), with `columns` stored columns.
pub fn limit_frame(kappa: &[RF], columns: usize) -> Result<Frame> {
    check_distinct(kappa)?;
    let n = kappa.len() as i64;
    let h = h_polynomial(kappa);
    let mut cols = vec![LaurentSeries::monomial(RF::one(), n - 1)];
    for j in 1..columns as i64 {
        cols.push(h.shift(-j));
    }
    Frame::new(cols, Tail::Truncated)
}

/// The `(1, n)`-soliton with `a_i = 1 / prod_{j != i} (kappa_i - kappa_j)`.
pub fn limit_soliton(kappa: &[RF]) -> Result<SolitonData> {
    check_distinct(kappa)?;
    let a: Vec<RF> = (0..kappa.len())
        .map(|i| {
            let p = (0..kappa.len())
                .filter(|&j| j != i)
                .fold(RF::one(), |acc, j| &acc * &(&kappa[i] - &kappa[j]));
            p.recip()
        })
        .collect::<Result<_>>()?;
    SolitonData::from_matrix(kappa.to_vec(), vec![a])
}

fn valuation_in(p: &MultiPoly, v: Var) -> u32 {
    p.terms().map(|(m, _)| m.exponent(v)).min().unwrap_or(0)
}

/// Projective limit `v -> at` of a vector of rational functions: divide by
/// the lowest power of `(v - at)` present, then set `v = at`.
pub fn specialize_projective(values: &[RF], v: Var, at: &Scalar) -> Result<Vec<RF>> {
    let shift = RF::from_poly(&MultiPoly::var(v) + &MultiPoly::constant(at.clone()));
    let shifted: Vec<RF> = values
        .iter()
        .map(|r| r.substitute_var(v, &shift))
        .collect::<Result<_>>()?;
    let val = |r: &RF| valuation_in(r.num(), v) as i64 - valuation_in(r.den(), v) as i64;
    let Some(lo) = shifted.iter().filter(|r| !r.is_zero()).map(val).min() else {
        return Ok(values.to_vec());
    };
    let zero: HashMap<Var, RF> = [(v, RF::zero())].into_iter().collect();
    shifted
        .iter()
        .map(|r| {
            if r.is_zero() {
                return Ok(RF::zero());
            }
            let e = val(r) - lo;
            if e > 0 {
                return Ok(RF::zero());
            }
            // e == 0: strip the common power and evaluate.
            let num = r
                .num()
                .div_monomial(&crate::algebra::Monomial::var(v, valuation_in(r.num(), v)))
                .unwrap();
            let den = r
                .den()
                .div_monomial(&crate::algebra::Monomial::var(v, valuation_in(r.den(), v)))
                .unwrap();
            RF::new(num, den)?.substitute(&zero)
        })
        .collect()
}

/// Plücker coordinates of weight at most `n` of the curve frame, for
/// comparison across specializations.
pub fn curve_plucker(
    curve: &HyperellipticCurve,
    d: &CurveDivisor,
    n: usize,
) -> Result<Vec<(Partition, RF)>> {
    plucker_vector(&frame_from_curve(curve, d, n)?, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{frac, parse_rf};

    fn rf(s: &str) -> RF {
        parse_rf(s).unwrap()
    }

    #[test]
    fn alpha_of_pure_power() {
        let mut f = vec![RF::zero(); 7];
        f[6] = RF::one();
        let stub = HyperellipticCurve { genus: 2, f };
        let a = alpha_series(&stub, 5).unwrap();
        assert!(a[0].is_one() && a[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn alpha_one_is_half_the_root_sum() {
        let c = HyperellipticCurve::from_roots(&(1..=6).map(RF::int).collect::<Vec<_>>()).unwrap();
        let a = alpha_series(&c, 8).unwrap();
        assert_eq!(a[1], RF::constant(frac(-21, 2)));
        // Squaring the series recovers the reversed polynomial.
        let s = LaurentSeries::new(0, a, Some(8));
        let sq = s.mul(&s);
        for i in 0..=6 {
            assert_eq!(sq.coeff(i).unwrap(), c.coefficients()[6 - i as usize]);
        }
        assert!(sq.coeff(7).unwrap().is_zero() && sq.coeff(8).unwrap().is_zero());
    }

    #[test]
    fn rejects_bad_models() {
        assert!(HyperellipticCurve::new(vec![RF::one(); 6]).is_err());
        assert!(HyperellipticCurve::new(vec![
            RF::int(1),
            RF::int(0),
            RF::int(0),
            RF::int(0),
            RF::int(0),
            RF::int(0),
            RF::int(2)
        ])
        .is_err());
        assert!(matches!(
            HyperellipticCurve::from_roots(&[rf("1"), rf("1"), rf("2"), rf("3")]),
            Err(Error::Coincident(_))
        ));
        assert!(matches!(
            degeneration_family(&[rf("1"), rf("1")]),
            Err(Error::Coincident(_))
        ));
    }

    #[test]
    fn h_expansion() {
        let h = h_polynomial(&[rf("k1"), rf("k2"), rf("k3")]).shift(-3);
        assert_eq!(h.coeff(-3).unwrap(), RF::one());
        assert_eq!(h.coeff(-2).unwrap(), rf("-k1 - k2 - k3"));
    }

    #[test]
    fn limit_soliton_matrices() {
        let s = limit_soliton(&[rf("1"), rf("2"), rf("3")]).unwrap();
        assert_eq!(s.matrix(), vec![vec![rf("1/2"), rf("-1"), rf("1/2")]]);
        let s = limit_soliton(&[rf("0"), rf("1")]).unwrap();
        assert_eq!(s.matrix(), vec![vec![rf("-1"), rf("1")]]);
    }

    #[test]
    fn specialization_strips_common_power() {
        let v = specialize_projective(
            &[rf("eps^2"), rf("eps^2*(3 + eps)"), rf("eps^3")],
            eps(),
            &frac(0, 1),
        )
        .unwrap();
        assert_eq!(v, vec![rf("1"), rf("3"), rf("0")]);
    }
}
