use std::collections::BTreeMap;

use super::frame::{plucker, Frame, Tail};
use super::partition::Partition;
use crate::algebra::{det_exact, LaurentSeries, RF};
use crate::error::{Error, Result};
use crate::hirota::{
    hirota_residual, ExpSum, ExpTerm, LatticeConfiguration, ThetaSum, WeightedPoint,
};
use crate::tropical::combinations;

/// Spectral values `kappa` and a point of `Gr(k, n)`, kept as its Plücker
/// vector indexed by sorted 0-based `k`-subsets.
#[derive(Clone, Debug, PartialEq)]
pub struct SolitonData {
    kappa: Vec<RF>,
    k: usize,
    plucker: BTreeMap<Vec<usize>, RF>,
    matrix: Option<Vec<Vec<RF>>>,
}

fn check_kappa(kappa: &[RF]) -> Result<()> {
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

/// Sign of the permutation sorting `idx`, and the sorted list; `None` on a
/// repeated index.
fn sort_with_sign(idx: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

/// One quadratic Grassmann-Plücker relation: `sum sign * p_S * p_T`.
pub type PluckerRelation = Vec<(i64, Vec<usize>, Vec<usize>)>;

/// The relations `sum_l (-1)^l p_{I + j_l} p_{J - j_l}` over all
/// `(k-1)`-subsets `I` and `(k+1)`-subsets `J` of `0..n`, dropping trivial ones.
pub fn grassmann_plucker_relations(k: usize, n: usize) -> Vec<PluckerRelation> {
    if k == 0 || k >= n {
        return vec![];
    }
    let mut out = Vec::new();
    for i in combinations(n, k - 1) {
        for j in combinations(n, k + 1) {
            let mut rel: BTreeMap<(Vec<usize>, Vec<usize>), i64> = BTreeMap::new();
            for (l, &jl) in j.iter().enumerate() {
                let mut s = i.clone();
                s.push(jl);
                let Some((s1, s)) = sort_with_sign(&s) else {
                    continue;
                };
                let t: Vec<usize> = j.iter().copied().filter(|&x| x != jl).collect();
                let sign = if l % 2 == 0 { s1 } else { -s1 };
                let key = if s <= t { (s, t) } else { (t, s) };
                *rel.entry(key).or_insert(0) += sign;
            }
            let mut rel: PluckerRelation = rel
                .into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|((s, t), c)| (c, s, t))
                .collect();
            if rel.first().is_some_and(|r| r.0 < 0) {
                rel.iter_mut().for_each(|r| r.0 = -r.0);
            }
            if rel.len() > 1 && !out.contains(&rel) {
                out.push(rel);
            }
        }
    }
    out
}

/// Evaluate every relation on the coordinates returned by `p`.
pub fn evaluate_relations(rels: &[PluckerRelation], p: impl Fn(&[usize]) -> RF) -> Vec<RF> {
    rels.iter()
        .map(|rel| {
            let mut s = RF::zero();
            for (c, a, b) in rel {
                s = &s + &(&p(a) * &p(b)).scale(&crate::algebra::int(*c));
            }
            s
        })
        .collect()
}

/// Grassmann-Plücker relations of `Gr(k, n)` evaluated on the coordinates
/// `xi_lambda` of a frame, subsets read as partitions in a `k x (n - k)` box.
pub fn frame_relations(frame: &Frame, k: usize, n: usize) -> Result<Vec<RF>> {
    let mut cache: BTreeMap<Vec<usize>, RF> = BTreeMap::new();
    for i in combinations(n, k) {
        let v = plucker(frame, &Partition::from_subset(&i)?)?;
        cache.insert(i, v);
    }
    Ok(evaluate_relations(
        &grassmann_plucker_relations(k, n),
        |i| cache[i].clone(),
    ))
}

/// The two relations `c211 c22 - c21 c221 + c2 c222` and
/// `c221 c31 - c21 c321 + c11 c331 + c c333` on a frame.
pub fn sample_relations(frame: &Frame) -> Result<[RF; 2]> {
    let x = |s: &str| -> Result<RF> { plucker(frame, &s.parse()?) };
    let r1 = &(&(&x("211")? * &x("22")?) - &(&x("21")? * &x("221")?)) + &(&x("2")? * &x("222")?);
    let r2 = &(&(&x("221")? * &x("31")?) - &(&x("21")? * &x("321")?))
        + &(&(&x("11")? * &x("331")?) + &(&x("")? * &x("333")?));
    Ok([r1, r2])
}

impl SolitonData {
    /// Soliton data from a full-rank `k x n` matrix.
    pub fn from_matrix(kappa: Vec<RF>, a: Vec<Vec<RF>>) -> Result<Self> {
        check_kappa(&kappa)?;
        let n = kappa.len();
        let k = a.len();
        if k == 0 || k > n || a.iter().any(|r| r.len() != n) {
            return Err(Error::input(format!(
                "matrix must be k x {n} with 1 <= k <= {n}"
            )));
        }
        let mut plucker = BTreeMap::new();
        for cols in combinations(n, k) {
            let m: Vec<Vec<RF>> = a
                .iter()
                .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
                .collect();
            let d = det_exact(&m);
            if !d.is_zero() {
                plucker.insert(cols, d);
            }
        }
        if plucker.is_empty() {
            return Err(Error::RankDeficient(format!("matrix has rank below {k}")));
        }
        Ok(SolitonData {
            kappa,
            k,
            plucker,
            matrix: Some(a),
        })
    }

    /// Soliton data from a Plücker vector; the quadratic relations are
    /// verified when `k <= 3` and `n <= 6`.
    pub fn from_plucker(kappa: Vec<RF>, k: usize, p: BTreeMap<Vec<usize>, RF>) -> Result<Self> {
        let s = Self::from_plucker_unchecked(kappa, k, p)?;
        if k <= 3 && s.n() <= 6 {
            let rels = grassmann_plucker_relations(k, s.n());
            if evaluate_relations(&rels, |i| s.coordinate(i))
                .iter()
                .any(|v| !v.is_zero())
            {
                return Err(Error::input("Plücker relations fail"));
            }
        }
        Ok(s)
    }

    /// Any vector indexed by `k`-subsets, Grassmannian or not.
    pub fn from_plucker_unchecked(
        kappa: Vec<RF>,
        k: usize,
        p: BTreeMap<Vec<usize>, RF>,
    ) -> Result<Self> {
        check_kappa(&kappa)?;
        let n = kappa.len();
        for i in p.keys() {
            if i.len() != k || i.windows(2).any(|w| w[0] >= w[1]) || i.iter().any(|&x| x >= n) {
                return Err(Error::input(format!("bad Plücker index {i:?}")));
            }
        }
        let plucker: BTreeMap<Vec<usize>, RF> =
            p.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if plucker.is_empty() {
            return Err(Error::input("zero Plücker vector"));
        }
        Ok(SolitonData {
            kappa,
            k,
            plucker,
            matrix: None,
        })
    }

    pub fn kappa(&self) -> &[RF] {
        &self.kappa
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.kappa.len()
    }

    /// Nonzero Plücker coordinates.
    pub fn plucker(&self) -> &BTreeMap<Vec<usize>, RF> {
        &self.plucker
    }

    /// `p_I` for a sorted subset.
    pub fn coordinate(&self, i: &[usize]) -> RF {
        self.plucker.get(i).cloned().unwrap_or_else(RF::zero)
    }

    /// The matrix as given, or one with an identity block in the columns of
    /// the first nonzero coordinate.
    pub fn matrix(&self) -> Vec<Vec<RF>> {
        if let Some(a) = &self.matrix {
            return a.clone();
        }
        let (base, p0) = self.plucker.iter().next().unwrap();
        (0..self.k)
            .map(|r| {
                (0..self.n())
                    .map(|j| {
                        let mut idx = base.clone();
                        idx[r] = j;
                        match sort_with_sign(&idx) {
                            Some((s, sorted)) => {
                                (&self.coordinate(&sorted) / p0).scale(&crate::algebra::int(s))
                            }
                            None => RF::zero(),
                        }
                    })
                    .collect()
            })
            .collect()
    }

    fn exponent(&self, i: &[usize]) -> [RF; 3] {
        let mut e = [RF::zero(), RF::zero(), RF::zero()];
        for &j in i {
            let k1 = &self.kappa[j];
            let k2 = k1 * k1;
            let k3 = &k2 * k1;
            e = [&e[0] + k1, &e[1] + &k2, &e[2] + &k3];
        }
        e
    }
}

/// Generalized Vandermonde determinant with rows `kappa^(lambda_r + k - r)`,
/// ordered so that the empty partition gives `prod_{i<j} (kappa_j - kappa_i)`.
pub fn delta_lambda(kappa: &[RF], i: &[usize], lambda: &Partition) -> RF {
    let k = i.len();
    if lambda.len() > k {
        return RF::zero();
    }
    let m: Vec<Vec<RF>> = (1..=k)
        .map(|r| {
            let row = k + 1 - r;
            let e = (lambda.part(row) + k - row) as i32;
            i.iter()
                .map(|&c| kappa[c].pow(e).expect("nonnegative power"))
                .collect()
        })
        .collect();
    det_exact(&m)
}

/// `sum_I p_I Delta_empty(kappa_I) exp[x sum kappa + y sum kappa^2 + t sum kappa^3]`.
pub fn soliton_tau(s: &SolitonData) -> ExpSum {
    let empty = Partition::empty();
    ExpSum::new(s.plucker.iter().map(|(i, p)| ExpTerm {
        coeff: p * &delta_lambda(&s.kappa, i, &empty),
        exponent: s.exponent(i),
    }))
}

/// Hirota residual of `soliton_tau`, with each subset `I` encoded as its
/// indicator vector in `Z^n` and the point `(kappa, kappa^2, kappa^3)`.
pub fn soliton_residual(s: &SolitonData) -> Result<BTreeMap<Vec<i64>, RF>> {
    let n = s.n();
    let empty = Partition::empty();
    let mut points = Vec::new();
    let mut coeffs = Vec::new();
    for (i, p) in &s.plucker {
        let c = p * &delta_lambda(&s.kappa, i, &empty);
        if c.is_zero() {
            continue;
        }
        points.push((0..n).map(|j| i.contains(&j) as i64).collect::<Vec<i64>>());
        coeffs.push(c);
    }
    if points.is_empty() {
        return Ok(BTreeMap::new());
    }
    let config = LatticeConfiguration::new(n, points)?;
    let theta = ThetaSum::new(config, coeffs)?;
    let sq: Vec<RF> = s.kappa.iter().map(|k| k * k).collect();
    let cu: Vec<RF> = s.kappa.iter().zip(&sq).map(|(k, q)| k * q).collect();
    let point = WeightedPoint::new(s.kappa.clone(), sq, cu)?;
    hirota_residual(&theta, &point)
}

/// `c_lambda = sum_I p_I Delta_lambda(kappa_I)` for all `|lambda| <= n`.
pub fn schur_coeffs(s: &SolitonData, n: usize) -> BTreeMap<Partition, RF> {
    Partition::up_to_weight(n)
        .into_iter()
        .map(|l| {
            let mut c = RF::zero();
            for (i, p) in &s.plucker {
                c = &c + &(p * &delta_lambda(&s.kappa, i, &l));
            }
            (l, c)
        })
        .collect()
}

/// Frame of `f_j = z^(1-k) sum_i a_{ji} / (1 - kappa_i z)` for `j <= k` and
/// the default columns after that, known through row `rows`.
pub fn frame_from_soliton(s: &SolitonData, rows: i64) -> Result<Frame> {
    let a = s.matrix();
    let k = s.k as i64;
    let top = rows + k;
    let mut cols = Vec::with_capacity(s.k);
    for row in &a {
        let mut coeffs = Vec::with_capacity((top + 1).max(0) as usize);
        let mut powers: Vec<RF> = vec![RF::one(); s.n()];
        for _ in 0..=top {
            let mut c = RF::zero();
            for (aj, p) in row.iter().zip(&powers) {
                if !aj.is_zero() {
                    c = &c + &(aj * p);
                }
            }
            coeffs.push(c);
            for (p, kappa) in powers.iter_mut().zip(&s.kappa) {
                *p = &*p * kappa;
            }
        }
        cols.push(LaurentSeries::new(1 - k, coeffs, Some(rows + 1)));
    }
    Frame::new(cols, Tail::Identity)
}

/// `p = 2 d^2/dx^2 log tau` at a point, for an exponential sum with rational
/// data. The largest exponent is factored out before exponentiating; `None`
/// when `tau` vanishes there or the data are not numeric.
pub fn kp_solution(tau: &ExpSum, x: f64, y: f64, t: f64) -> Option<f64> {
    let mut terms = Vec::with_capacity(tau.terms().len());
    for term in tau.terms() {
        let c = rf_f64(&term.coeff)?;
        let e: Vec<f64> = term.exponent.iter().map(rf_f64).collect::<Option<_>>()?;
        terms.push((c, e[0], e[0] * x + e[1] * y + e[2] * t));
    }
    let m = terms.iter().map(|t| t.2).fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<(f64, f64)> = terms
        .iter()
        .map(|&(c, u, th)| (c * (th - m).exp(), u))
        .collect();
    let f: f64 = w.iter().map(|p| p.0).sum();
    if f == 0.0 || !f.is_finite() {
        return None;
    }
    // f f_xx - f_x^2 as a sum over pairs, which avoids cancellation.
    let mut num = 0.0;
    for (i, (wi, ui)) in w.iter().enumerate() {
        for (wj, uj) in &w[i + 1..] {
            num += wi * wj * (ui - uj) * (ui - uj);
        }
    }
    Some(2.0 * num / (f * f))
}

fn rf_f64(r: &RF) -> Option<f64> {
    use num_traits::ToPrimitive;
    r.constant_value()?.to_f64()
}
