use rayon::prelude::*;

use super::partition::{maya, Partition};
use super::schur::schur_sigma;
use super::tau::TrivariatePoly;
use crate::algebra::{det_exact, LaurentSeries, RF};
use crate::error::{Error, Result};

/// What the columns past the stored ones look like.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tail {
    /// Column `j` is the unit vector at row `-j`, i.e. the series `z^(1-j)`.
    Identity,
    /// Column `j` has leading row `-j` and leading coefficient 1, but its
    /// other entries are not stored.
    Truncated,
}

/// Column-echelon frame of a point of the Sato Grassmannian. Column `j`
/// (1-based) is a Laurent series `sum_r xi_{r,j} z^(r+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    cols: Vec<LaurentSeries>,
    ell: usize,
    tail: Tail,
}

fn leading_row(s: &LaurentSeries) -> i64 {
    s.valuation() - 1
}

impl Frame {
    /// The frame with every column at its default, `xi_empty = 1`.
    pub fn identity() -> Self {
        Frame {
            cols: vec![],
            ell: 0,
            tail: Tail::Identity,
        }
    }

    /// Normalize the span of `cols` (plus the tail) to column-echelon form.
    pub fn new(cols: Vec<LaurentSeries>, tail: Tail) -> Result<Self> {
        let n = cols.len() as i64;
        let mut cols = cols;
        if tail == Tail::Identity {
            // Entries at rows below -n are multiples of tail columns.
            for c in &mut cols {
                let lo = c.valuation();
                let mut clear = LaurentSeries::zero();
                for e in lo..=-n {
                    let a = c.coeff(e)?;
                    if !a.is_zero() {
                        clear = clear.add(&LaurentSeries::monomial(a, e));
                    }
                }
                *c = c.sub(&clear);
            }
        }
        let mut pending = cols;
        let mut pivots: Vec<LaurentSeries> = Vec::new();
        while !pending.is_empty() {
            if pending.iter().any(|c| c.is_zero()) {
                return Err(Error::RankDeficient(
                    "frame columns are dependent at the stored precision".into(),
                ));
            }
            let (ip, _) = pending
                .iter()
                .enumerate()
                .min_by_key(|(_, c)| c.valuation())
                .unwrap();
            let p = pending.swap_remove(ip);
            let v = p.valuation();
            let lead = p.leading_coeff().unwrap().recip()?;
            let p = p.scale(&lead);
            for c in &mut pending {
                if c.valuation() == v {
                    let a = c.leading_coeff().unwrap().clone();
                    *c = c.sub(&p.scale(&a));
                }
            }
            pivots.push(p);
        }
        pivots.reverse();
        let mut ell = pivots.len();
        while ell > 0 && leading_row(&pivots[ell - 1]) == -(ell as i64) {
            ell -= 1;
        }
        Ok(Frame {
            cols: pivots,
            ell,
            tail,
        })
    }

    pub fn columns(&self) -> &[LaurentSeries] {
        &self.cols
    }

    pub fn stored_columns(&self) -> usize {
        self.cols.len()
    }

    /// Triangularity index: columns past `ell` have leading row `-j`.
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// Largest row known in every stored column; `None` when all are exact.
    pub fn row_max(&self) -> Option<i64> {
        self.cols
            .iter()
            .filter_map(|c| c.precision())
            .min()
            .map(|p| p - 1)
    }

    /// Leading row of each stored column.
    pub fn leading_rows(&self) -> Vec<i64> {
        self.cols.iter().map(leading_row).collect()
    }

    /// `xi_{r,j}` for 1-based `j`.
    pub fn entry(&self, r: i64, j: usize) -> Result<RF> {
        if let Some(c) = self.cols.get(j - 1) {
            return c.coeff(r + 1).map_err(|_| {
                Error::precision(format!(
                    "insufficient frame precision: row {r} of column {j} is not stored"
                ))
            });
        }
        match self.tail {
            Tail::Identity => Ok(if r == -(j as i64) {
                RF::one()
            } else {
                RF::zero()
            }),
            Tail::Truncated => Err(Error::precision(format!(
                "insufficient frame precision: column {j} requested, {} stored",
                self.cols.len()
            ))),
        }
    }

    /// Multiply every column by `h`, which must be a unit of the power
    /// series ring, and renormalize. Default tail columns are materialized up
    /// to `columns`.
    pub fn gauge_by_unit(&self, h: &LaurentSeries, columns: usize) -> Result<Frame> {
        if h.is_zero() || h.valuation() != 0 {
            return Err(Error::input(
                "gauge factor must have a nonzero constant term",
            ));
        }
        let mut cols: Vec<LaurentSeries> = self.cols.iter().map(|c| c.mul(h)).collect();
        if self.tail == Tail::Identity {
            for j in self.cols.len() + 1..=columns {
                cols.push(h.shift(1 - j as i64));
            }
        }
        Frame::new(cols, Tail::Truncated)
    }
}

/// Plücker coordinate `xi_lambda = det(xi_{m_i, j})`, `1 <= i, j <= q` with
/// `q = max(len(lambda), ell)`.
pub fn plucker(frame: &Frame, lambda: &Partition) -> Result<RF> {
    plucker_with_size(frame, lambda, lambda.len().max(frame.ell))
}

/// The same minor taken at an explicit size `q`, which must be at least the
/// default one. Any such choice gives the same value.
pub fn plucker_with_size(frame: &Frame, lambda: &Partition, q: usize) -> Result<RF> {
    if q < lambda.len().max(frame.ell) {
        return Err(Error::input("minor size below the triangularity index"));
    }
    let m = maya(lambda);
    let mut rows = Vec::with_capacity(q);
    for i in 1..=q {
        let r = m.entry(i);
        let row: Result<Vec<RF>> = (1..=q).map(|j| frame.entry(r, j)).collect();
        rows.push(row?);
    }
    Ok(det_exact(&rows))
}

/// All `xi_lambda` with `|lambda| <= n`, in partition order.
pub fn plucker_vector(frame: &Frame, n: usize) -> Result<Vec<(Partition, RF)>> {
    let parts = Partition::up_to_weight(n);
    let vals: Result<Vec<RF>> = parts.par_iter().map(|l| plucker(frame, l)).collect();
    Ok(parts.into_iter().zip(vals?).collect())
}

/// `tau[n] = sum_{|lambda| <= n} xi_lambda sigma_lambda`, the empty partition
/// included.
pub fn tau_truncated(frame: &Frame, n: usize) -> Result<TrivariatePoly> {
    let coeffs = plucker_vector(frame, n)?;
    let sigmas: Vec<_> = coeffs.iter().map(|(l, _)| schur_sigma(l)).collect();
    Ok(TrivariatePoly::linear_combination(
        coeffs.iter().map(|(_, c)| c).zip(&sigmas),
    ))
}
