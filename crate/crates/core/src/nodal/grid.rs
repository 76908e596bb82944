use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sato::{kp_solution, soliton_tau, SolitonData};

/// `start:stop:step`, both ends included.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridRange {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridRange {
    pub fn single(v: f64) -> Self {
        GridRange {
            start: v,
            stop: v,
            step: 1.0,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.step <= 0.0 || self.stop < self.start {
            return vec![self.start];
        }
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

impl std::str::FromStr for GridRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad number {t:?} in range")))
        };
        match parts.as_slice() {
            [v] => Ok(GridRange::single(num(v)?)),
            [a, b, c] => {
                let r = GridRange {
                    start: num(a)?,
                    stop: num(b)?,
                    step: num(c)?,
                };
                if r.step <= 0.0 || r.stop < r.start {
                    return Err(Error::Parse(format!(
                        "range {s} is empty or has a nonpositive step"
                    )));
                }
                Ok(r)
            }
            _ => Err(Error::Parse(format!("expected start:stop:step, got {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub x: GridRange,
    pub y: GridRange,
    pub t: GridRange,
}

/// One sample; `p` is `None` where `tau` vanishes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSample {
    pub x: f64,
    pub y: f64,
    pub t: f64,
    pub p: Option<f64>,
}

/// `p = 2 d^2/dx^2 log tau` on the grid, ordered by `t`, then `y`, then `x`.
pub fn kp_solution_grid(s: &SolitonData, grid: &GridSpec) -> Result<Vec<GridSample>> {
    if s.kappa()
        .iter()
        .chain(s.plucker().values())
        .any(|c| c.constant_value().is_none())
    {
        return Err(Error::input("numeric kappa and matrix required"));
    }
    let tau = soliton_tau(s);
    let mut points = Vec::new();
    for &t in &grid.t.values() {
        for &y in &grid.y.values() {
            for &x in &grid.x.values() {
                points.push((x, y, t));
            }
        }
    }
    Ok(points
        .into_par_iter()
        .map(|(x, y, t)| GridSample {
            x,
            y,
            t,
            p: kp_solution(&tau, x, y, t),
        })
        .collect())
}
