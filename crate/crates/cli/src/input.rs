//! JSON input formats. Rational entries are strings such as `"1/2"` or
//! `"k1 - k2"`; plain JSON integers are accepted too.

use std::path::Path;

use kpg_core::algebra::{parse_rf, parse_scalar, LaurentSeries, Scalar, RF};
use kpg_core::curves::{CurveDivisor, HyperellipticCurve};
use kpg_core::hirota::{LatticeConfiguration, WeightedPoint};
use kpg_core::nodal::{DivisorTerm, NodalCurve, Node, Place, Point};
use kpg_core::sato::{Frame, SolitonData, Tail};
use kpg_core::tropical::{Edge, MetricGraph};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{CliError, Result};
use crate::report::InputFile;

/// Reads and hashes a file and decodes it as `T`.
pub fn load<T: DeserializeOwned>(path: &Path) -> Result<(T, InputFile)> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let value = serde_json::from_slice(&bytes).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    Ok((value, InputFile::new(&name, &bytes)))
}

pub fn rf(v: &Value) -> Result<RF> {
    match v {
        Value::String(s) => Ok(parse_rf(s)?),
        Value::Number(n) if n.is_i64() => Ok(RF::int(n.as_i64().unwrap())),
        other => Err(CliError::usage(format!(
            "expected a rational string, got {other}"
        ))),
    }
}

pub fn rfs(vs: &[Value]) -> Result<Vec<RF>> {
    vs.iter().map(rf).collect()
}

fn scalar(v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => Ok(parse_scalar(s)?),
        Value::Number(n) if n.is_i64() => Ok(Scalar::from_integer(n.as_i64().unwrap().into())),
        other => Err(CliError::usage(format!(
            "expected a rational number, got {other}"
        ))),
    }
}

fn integer(v: &Value) -> Result<i64> {
    match v {
        Value::Number(n) if n.is_i64() => Ok(n.as_i64().unwrap()),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("expected an integer, got {s:?}"))),
        other => Err(CliError::usage(format!("expected an integer, got {other}"))),
    }
}

/// Comma separated list of rational expressions.
pub fn rf_list(s: &str) -> Result<Vec<RF>> {
    s.split(',').map(|t| Ok(parse_rf(t.trim())?)).collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    vertices: usize,
    edges: Vec<(usize, usize, Value)>,
    cycles: Option<Vec<Vec<i64>>>,
}

impl GraphJson {
    pub fn build(&self) -> Result<MetricGraph> {
        let edges = self
            .edges
            .iter()
            .map(|(tail, head, len)| {
                Ok(Edge {
                    tail: *tail,
                    head: *head,
                    length: scalar(len)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(match &self.cycles {
            Some(c) => MetricGraph::new(self.vertices, edges, c.clone())?,
            None => MetricGraph::with_fundamental_cycles(self.vertices, edges)?,
        })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigJson {
    g: usize,
    points: Vec<Vec<i64>>,
}

impl ConfigJson {
    pub fn build(&self) -> Result<LatticeConfiguration> {
        Ok(LatticeConfiguration::new(self.g, self.points.clone())?)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointJson {
    u: Vec<Value>,
    v: Vec<Value>,
    w: Vec<Value>,
    a: Option<Vec<Value>>,
}

impl PointJson {
    pub fn build(&self) -> Result<(WeightedPoint, Option<Vec<RF>>)> {
        let p = WeightedPoint::new(rfs(&self.u)?, rfs(&self.v)?, rfs(&self.w)?)?;
        let a = self.a.as_deref().map(rfs).transpose()?;
        Ok((p, a))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolitonJson {
    kappa: Vec<Value>,
    #[serde(rename = "A")]
    a: Vec<Vec<Value>>,
}

impl SolitonJson {
    pub fn build(&self) -> Result<SolitonData> {
        let a = self.a.iter().map(|r| rfs(r)).collect::<Result<Vec<_>>>()?;
        Ok(SolitonData::from_matrix(rfs(&self.kappa)?, a)?)
    }
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum TailJson {
    Identity,
    Truncated,
}

/// Column `j` lists `xi_{r,j}` for `r` in `rows[0]..=rows[1]`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameJson {
    tail: TailJson,
    rows: (i64, i64),
    columns: Vec<Vec<Value>>,
    ell: Option<usize>,
}

impl FrameJson {
    pub fn build(&self) -> Result<Frame> {
        let (lo, hi) = self.rows;
        if hi < lo {
            return Err(CliError::usage("frame rows must be an increasing range"));
        }
        let len = (hi - lo + 1) as usize;
        let mut cols = Vec::new();
        for (j, c) in self.columns.iter().enumerate() {
            if c.len() != len {
                return Err(CliError::usage(format!(
                    "column {} has {} entries, rows give {len}",
                    j + 1,
                    c.len()
                )));
            }
            cols.push(LaurentSeries::new(lo + 1, rfs(c)?, Some(hi + 1)));
        }
        let tail = match self.tail {
            TailJson::Identity => Tail::Identity,
            TailJson::Truncated => Tail::Truncated,
        };
        let frame = Frame::new(cols, tail)?;
        if let Some(l) = self.ell {
            if l != frame.ell() {
                return Err(CliError::usage(format!(
                    "frame declares ell = {l} but its columns give {}",
                    frame.ell()
                )));
            }
        }
        Ok(frame)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DivisorJson {
    #[serde(rename = "type")]
    kind: String,
    #[serde(default)]
    points: Vec<(Value, Value)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveJson {
    genus: usize,
    f: Vec<Value>,
    divisor: Option<DivisorJson>,
}

impl CurveJson {
    pub fn coefficients(&self) -> Result<Vec<RF>> {
        rfs(&self.f)
    }

    pub fn divisor(&self) -> Result<CurveDivisor> {
        let Some(d) = &self.divisor else {
            return Ok(CurveDivisor::D0);
        };
        let pts: Vec<[RF; 2]> = d
            .points
            .iter()
            .map(|(c, y)| Ok([rf(c)?, rf(y)?]))
            .collect::<Result<_>>()?;
        match (d.kind.as_str(), pts.as_slice()) {
            ("D0", []) => Ok(CurveDivisor::D0),
            ("D1", [a]) => Ok(CurveDivisor::D1(a.clone())),
            ("D2", [a, b]) => Ok(CurveDivisor::D2(a.clone(), b.clone())),
            (k @ ("D0" | "D1" | "D2"), _) => Err(CliError::usage(format!(
                "divisor {k} takes {} points, got {}",
                &k[1..],
                pts.len()
            ))),
            (k, _) => Err(CliError::usage(format!(
                "unknown divisor type {k:?}; use D0, D1 or D2"
            ))),
        }
    }

    pub fn check_genus(&self, curve: &HyperellipticCurve) -> Result<()> {
        if curve.genus() != self.genus {
            return Err(CliError::usage(format!(
                "declared genus {} but f has genus {}",
                self.genus,
                curve.genus()
            )));
        }
        Ok(())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodalJson {
    components: usize,
    nodes: Vec<((usize, Value), (usize, Value))>,
    p: (usize, Value),
    #[serde(default)]
    divisor: Vec<(usize, Value, Value)>,
}

fn point(v: &Value) -> Result<Point> {
    match v {
        Value::String(s) => Ok(s.parse::<Point>()?),
        other => Ok(Point::Finite(rf(other)?)),
    }
}

impl NodalJson {
    pub fn build(&self) -> Result<NodalCurve> {
        let place = |(c, v): &(usize, Value)| -> Result<Place> { Ok(Place::new(*c, point(v)?)) };
        let nodes = self
            .nodes
            .iter()
            .map(|(a, b)| Ok(Node(place(a)?, place(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let divisor = self
            .divisor
            .iter()
            .map(|(c, v, m)| {
                Ok(DivisorTerm {
                    place: Place::new(*c, point(v)?),
                    multiplicity: integer(m)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(NodalCurve::new(
            self.components,
            nodes,
            place(&self.p)?,
            divisor,
        )?)
    }

    /// Every coordinate that appears in the file.
    pub fn coordinates(&self) -> Result<Vec<RF>> {
        let mut out = Vec::new();
        let places = self
            .nodes
            .iter()
            .flat_map(|(a, b)| [&a.1, &b.1])
            .chain([&self.p.1]);
        for v in places.chain(self.divisor.iter().map(|d| &d.1)) {
            if let Point::Finite(c) = point(v)? {
                out.push(c);
            }
        }
        Ok(out)
    }
}
