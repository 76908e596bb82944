use std::fmt;

use super::interpolation::InterpolationProblem;
use super::riemann_roch::{riemann_roch_space, Section};
use super::{arithmetic_genus, DivisorTerm, NodalCurve, Node, Place, Point};
use crate::algebra::{geometric, LaurentSeries, Matrix, RF};
use crate::error::{Error, Result};
use crate::sato::{Frame, SolitonData, Tail};

/// `diag(A, B)` with `A` of size `l x a` and `B` of size `b x 2b`, over the
/// spectral list `kappa_1..kappa_a, kappa_{1,1}, kappa_{1,2}, ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct SolitonBlockMatrix {
    pub a: Matrix,
    pub b: Matrix,
    /// Number of columns of `A`.
    pub a_cols: usize,
    pub kappa: Vec<RF>,
}

impl SolitonBlockMatrix {
    pub fn rows(&self) -> usize {
        self.a.len() + self.b.len()
    }

    pub fn cols(&self) -> usize {
        self.a_cols + 2 * self.b.len()
    }

    pub fn matrix(&self) -> Matrix {
        let cols = self.cols();
        let mut out = Vec::with_capacity(self.rows());
        for row in &self.a {
            let mut r = row.clone();
            r.resize(cols, RF::zero());
            out.push(r);
        }
        for row in &self.b {
            let mut r = vec![RF::zero(); self.a_cols];
            r.extend(row.iter().cloned());
            out.push(r);
        }
        out
    }

    pub fn soliton(&self) -> Result<SolitonData> {
        SolitonData::from_matrix(self.kappa.clone(), self.matrix())
    }
}

/// The two hypotheses under which the curve data give a point of the Sato
/// Grassmannian.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    /// `(*)`: sections are determined by their expansion at `p`.
    Injectivity,
    /// `(**)`: `h^1(X, D + np) = 0` for large `n`.
    Vanishing,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Injectivity => write!(f, "(*)"),
            Condition::Vanishing => write!(f, "(**)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionFailure {
    pub condition: Condition,
    pub step: u8,
    /// Dimension found by the failing check.
    pub dimension: usize,
    /// Dimension required to pass.
    pub expected: i64,
}

impl fmt::Display for ConditionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.condition {
            Condition::Vanishing => write!(
                f,
                "condition (**) fails at step 2: h^0(X0', D0') = {} but deg D0' + 1 - p_a(X0') = {}",
                self.dimension, self.expected
            ),
            Condition::Injectivity => {
                write!(f, "condition (*) fails at step 3: h^0(X0', D0' - Z) = {}, need 0", self.dimension)
            }
        }
    }
}

/// Successful output with the data it was built from.
#[derive(Clone, Debug, PartialEq)]
pub struct NodalSoliton {
    pub matrix: SolitonBlockMatrix,
    /// `Q_1..Q_l`, a basis of `H^0(X0', D0')`.
    pub basis: Vec<Section>,
    /// Branches on `X0'` of the points of `Z`, matching `kappa_1..kappa_a`.
    pub z_places: Vec<Place>,
    pub problem: InterpolationProblem,
    /// Multiplicity of `p` in `D`.
    pub p_multiplicity: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum NodalOutcome {
    Soliton(NodalSoliton),
    Failed(ConditionFailure),
}

impl NodalOutcome {
    pub fn soliton(&self) -> Option<&NodalSoliton> {
        match self {
            NodalOutcome::Soliton(s) => Some(s),
            NodalOutcome::Failed(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&ConditionFailure> {
        match self {
            NodalOutcome::Soliton(_) => None,
            NodalOutcome::Failed(f) => Some(f),
        }
    }
}

fn finite_on_zero(pl: &Place) -> Result<RF> {
    match &pl.point {
        Point::Finite(c) => Ok(c.clone()),
        Point::Infinity => Err(Error::input("node branch at p")),
    }
}

/// Checks the conditions `(*)` and `(**)` on `X0' = closure(X - X0)` and, when
/// both hold, returns the block soliton matrix of `iota(H^0(X, D + inf p))`
/// up to gauge: `A_ij = Q_i(q_j) P(kappa_j) / K'(kappa_j)` and
/// `B_{j, 2j-1+e} = P(kappa_{j,e}) / K'(kappa_{j,e})`.
pub fn algorithm61(curve: &NodalCurve) -> Result<NodalOutcome> {
    // Step 1: split off X0.
    let rest: Vec<usize> = (1..curve.components()).collect();
    let mut kappa = Vec::new();
    let mut z_places = Vec::new();
    let mut pairs = Vec::new();
    for Node(a, b) in curve.nodes() {
        match (a.component, b.component) {
            (0, 0) => pairs.push([finite_on_zero(a)?, finite_on_zero(b)?]),
            (0, _) => {
                kappa.push(finite_on_zero(a)?);
                z_places.push(b.clone());
            }
            (_, 0) => {
                kappa.push(finite_on_zero(b)?);
                z_places.push(a.clone());
            }
            _ => {}
        }
    }
    let mut poles = Vec::new();
    let mut p_multiplicity = 0;
    let mut d_rest: Vec<DivisorTerm> = Vec::new();
    for t in curve.divisor() {
        match (t.place.component, &t.place.point) {
            (0, Point::Infinity) => p_multiplicity = t.multiplicity,
            (0, Point::Finite(c)) => poles.push((c.clone(), t.multiplicity)),
            _ => d_rest.push(t.clone()),
        }
    }
    let problem = InterpolationProblem {
        kappa,
        pairs,
        poles,
    };

    // Step 2: h^0(X0', D0') against Riemann-Roch.
    let basis = if rest.is_empty() {
        vec![]
    } else {
        riemann_roch_space(curve, &rest, &d_rest)?
    };
    let deg: i64 = d_rest.iter().map(|t| t.multiplicity).sum();
    let expected = deg + 1 - arithmetic_genus(curve, &rest);
    if basis.len() as i64 != expected {
        return Ok(NodalOutcome::Failed(ConditionFailure {
            condition: Condition::Vanishing,
            step: 2,
            dimension: basis.len(),
            expected,
        }));
    }

    // Step 3: H^0(X0', D0' - Z) must vanish.
    if !rest.is_empty() {
        let mut shifted = d_rest.clone();
        for pl in &z_places {
            match shifted.iter_mut().find(|t| t.place == *pl) {
                Some(t) => t.multiplicity -= 1,
                None => shifted.push(DivisorTerm {
                    place: pl.clone(),
                    multiplicity: -1,
                }),
            }
        }
        let kernel = riemann_roch_space(curve, &rest, &shifted)?;
        if !kernel.is_empty() {
            return Ok(NodalOutcome::Failed(ConditionFailure {
                condition: Condition::Injectivity,
                step: 3,
                dimension: kernel.len(),
                expected: 0,
            }));
        }
    }

    // Step 4: the matrices.
    let weight = |c: &RF| -> Result<RF> { problem.p_at(c)?.checked_div(&problem.k_prime(c)) };
    let weights: Vec<RF> = problem.kappa.iter().map(weight).collect::<Result<_>>()?;
    let a = basis
        .iter()
        .map(|q| {
            z_places
                .iter()
                .zip(&weights)
                .map(|(pl, w)| Ok(&q.value(pl)? * w))
                .collect::<Result<Vec<RF>>>()
        })
        .collect::<Result<Matrix>>()?;
    let nb = problem.pairs.len();
    let mut b = vec![vec![RF::zero(); 2 * nb]; nb];
    for (j, [k1, k2]) in problem.pairs.iter().enumerate() {
        b[j][2 * j] = weight(k1)?;
        b[j][2 * j + 1] = weight(k2)?;
    }
    let matrix = SolitonBlockMatrix {
        a,
        b,
        a_cols: problem.kappa.len(),
        kappa: problem.nodes(),
    };
    Ok(NodalOutcome::Soliton(NodalSoliton {
        matrix,
        basis,
        z_places,
        problem,
        p_multiplicity,
    }))
}

/// The rational curve with `g` nodes glued from the given pairs of
/// parameters, with `D = (g - 1) p`; a pure `B` block, a `(g, 2g)`-soliton.
pub fn irreducible_nodal_soliton(pairs: &[[RF; 2]]) -> Result<SolitonBlockMatrix> {
    let nodes = pairs
        .iter()
        .map(|[a, b]| Node(Place::finite(0, a.clone()), Place::finite(0, b.clone())))
        .collect();
    let g = pairs.len() as i64;
    let divisor = if g == 1 {
        vec![]
    } else {
        vec![DivisorTerm {
            place: Place::infinity(0),
            multiplicity: g - 1,
        }]
    };
    let curve = NodalCurve::new(1, nodes, Place::infinity(0), divisor)?;
    match algorithm61(&curve)? {
        NodalOutcome::Soliton(s) => Ok(s.matrix),
        NodalOutcome::Failed(f) => Err(Error::input(format!("irreducible curve failed: {f}"))),
    }
}

/// `1 / (1 - c z)` raised to an integer power, known up to `z^n`.
fn factor_power(c: &RF, e: i64, n: i64) -> Result<LaurentSeries> {
    let base = if e >= 0 {
        LaurentSeries::exact(0, vec![RF::one(), -c])
    } else {
        geometric(c, n)
    };
    let mut acc = LaurentSeries::one();
    for _ in 0..e.unsigned_abs() {
        acc = acc.mul(&base).truncate(n);
    }
    Ok(acc)
}

/// `prod (1 - p_j z)^(m_j) / prod (1 - node z)`, the unit relating
/// [`nodal_frame`] to the frame of the soliton matrix.
pub fn nodal_gauge_unit(out: &NodalSoliton, n: i64) -> Result<LaurentSeries> {
    let mut u = LaurentSeries::one();
    for (p, m) in &out.problem.poles {
        u = u.mul(&factor_power(p, *m, n)?).truncate(n);
    }
    for k in out.problem.nodes() {
        u = u.mul(&geometric(&k, n)).truncate(n);
    }
    Ok(u)
}

/// Frame of `iota(H^0(X, D + inf p))` from the restrictions of its sections
/// to `X0`: the interpolants `K/P sum_j A_ij / (x - kappa_j)`, the pair terms
/// and `K/P x^k`, expanded in `z = 1/x` and multiplied by `z^(m+1)`.
pub fn nodal_frame(out: &NodalSoliton, columns: usize) -> Result<Frame> {
    let problem = &out.problem;
    let nodes = problem.nodes();
    let n_total = nodes.len() as i64;
    let pole_deg: i64 = problem.poles.iter().map(|(_, m)| m).sum();
    let order = 2 * columns as i64 + n_total + 8;
    // K/P = z^(M - N) h(z) / pi(z).
    let mut unit = LaurentSeries::one();
    for k in &nodes {
        unit = unit.mul(&LaurentSeries::exact(0, vec![RF::one(), -k]));
    }
    for (p, m) in &problem.poles {
        unit = unit.mul(&factor_power(p, -m, order)?).truncate(order);
    }
    let lead = pole_deg - n_total + out.p_multiplicity + 1;
    let kp = unit.shift(lead);
    let mut cols = Vec::new();
    for row in out.matrix.matrix() {
        let mut s = LaurentSeries::zero();
        for (c, k) in row.iter().zip(&nodes) {
            if !c.is_zero() {
                s = s.add(&geometric(k, order).shift(1).scale(c));
            }
        }
        cols.push(kp.mul(&s).truncate(order));
    }
    let mut k = 0;
    while cols.len() < columns {
        cols.push(kp.shift(-k).truncate(order));
        k += 1;
    }
    Frame::new(cols, Tail::Truncated)
}
