//! Nodal curves whose components are projective lines, their Riemann-Roch
//! spaces, and the soliton matrices they define.

mod algorithm;
mod grid;
mod interpolation;
mod riemann_roch;

use std::fmt;

use crate::algebra::{parse_rf, Var, RF};
use crate::error::{Error, Result};

pub use algorithm::{
    algorithm61, irreducible_nodal_soliton, nodal_frame, nodal_gauge_unit, Condition,
    ConditionFailure, NodalOutcome, NodalSoliton, SolitonBlockMatrix,
};
pub use grid::{kp_solution_grid, GridRange, GridSample, GridSpec};
pub use interpolation::{interpolation_basis, InterpolationFamily, InterpolationProblem};
pub use riemann_roch::{riemann_roch_space, Section};

/// Affine coordinate of component `c`.
pub fn coordinate(c: usize) -> Var {
    Var::new(&format!("x{c}"))
}

fn is_coordinate_name(name: &str) -> bool {
    name.len() > 1 && name.starts_with('x') && name[1..].chars().all(|c| c.is_ascii_digit())
}

/// A point of a projective line in its affine coordinate.
#[derive(Clone, Debug, PartialEq)]
pub enum Point {
    Finite(RF),
    Infinity,
}

impl Point {
    pub fn finite(&self) -> Option<&RF> {
        match self {
            Point::Finite(c) => Some(c),
            Point::Infinity => None,
        }
    }

    /// `x -> 1 / (x - a)`, which sends `a` to infinity.
    fn moved(&self, a: &RF) -> Result<Point> {
        Ok(match self {
            Point::Infinity => Point::Finite(RF::zero()),
            Point::Finite(c) if c == a => Point::Infinity,
            Point::Finite(c) => Point::Finite((c - a).recip()?),
        })
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(c) => write!(f, "{c}"),
            Point::Infinity => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "oo" => Ok(Point::Infinity),
            other => Ok(Point::Finite(parse_rf(other)?)),
        }
    }
}

/// A point on a given component.
#[derive(Clone, Debug, PartialEq)]
pub struct Place {
    pub component: usize,
    pub point: Point,
}

impl Place {
    pub fn new(component: usize, point: Point) -> Self {
        Place { component, point }
    }

    pub fn finite(component: usize, c: RF) -> Self {
        Place {
            component,
            point: Point::Finite(c),
        }
    }

    pub fn infinity(component: usize) -> Self {
        Place {
            component,
            point: Point::Infinity,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@X{}", self.point, self.component)
    }
}

/// Two places glued to a node; equal components give a self-node.
#[derive(Clone, Debug, PartialEq)]
pub struct Node(pub Place, pub Place);

#[derive(Clone, Debug, PartialEq)]
pub struct DivisorTerm {
    pub place: Place,
    pub multiplicity: i64,
}

/// `X = X_0 u ... u X_r` with rational components glued at nodes, a smooth
/// point `p` on `X_0` at infinity and a divisor `D` of degree `g - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct NodalCurve {
    components: usize,
    nodes: Vec<Node>,
    divisor: Vec<DivisorTerm>,
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    parent[i] = r;
    r
}

/// Number of connected components of the dual graph restricted to `comps`.
fn connected_components(comps: &[usize], nodes: &[Node]) -> usize {
    let n = comps.iter().max().map_or(0, |m| m + 1);
    let mut parent: Vec<usize> = (0..n).collect();
    for Node(a, b) in nodes {
        if comps.contains(&a.component) && comps.contains(&b.component) {
            let (ra, rb) = (
                find(&mut parent, a.component),
                find(&mut parent, b.component),
            );
            parent[ra] = rb;
        }
    }
    let mut roots: Vec<usize> = comps.iter().map(|&c| find(&mut parent, c)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

impl NodalCurve {
    /// Validates the data and moves `p` to infinity on component 0 (by
    /// relabelling components and a Möbius change of coordinate).
    pub fn new(
        components: usize,
        nodes: Vec<Node>,
        p: Place,
        divisor: Vec<DivisorTerm>,
    ) -> Result<Self> {
        if components == 0 {
            return Err(Error::input("need at least one component"));
        }
        let all_places = nodes
            .iter()
            .flat_map(|n| [&n.0, &n.1])
            .chain(divisor.iter().map(|d| &d.place))
            .chain([&p]);
        for pl in all_places {
            if pl.component >= components {
                return Err(Error::input(format!(
                    "component {} out of range",
                    pl.component
                )));
            }
            if let Point::Finite(c) = &pl.point {
                if let Some(v) = c.vars().into_iter().find(|v| is_coordinate_name(&v.name())) {
                    return Err(Error::input(format!(
                        "parameter name {v} is reserved for coordinates"
                    )));
                }
            }
        }
        let relabel = |c: usize| {
            if c == p.component {
                0
            } else if c == 0 {
                p.component
            } else {
                c
            }
        };
        let shift = p.point.finite().cloned();
        let fix = |pl: &Place| -> Result<Place> {
            let component = relabel(pl.component);
            let point = match (&shift, component) {
                (Some(a), 0) => pl.point.moved(a)?,
                _ => pl.point.clone(),
            };
            Ok(Place { component, point })
        };
        let nodes = nodes
            .iter()
            .map(|Node(a, b)| Ok(Node(fix(a)?, fix(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut merged: Vec<DivisorTerm> = Vec::new();
        for d in &divisor {
            let place = fix(&d.place)?;
            match merged.iter_mut().find(|t| t.place == place) {
                Some(t) => t.multiplicity += d.multiplicity,
                None => merged.push(DivisorTerm {
                    place,
                    multiplicity: d.multiplicity,
                }),
            }
        }
        merged.retain(|t| t.multiplicity != 0);
        let curve = NodalCurve {
            components,
            nodes,
            divisor: merged,
        };
        curve.validate()?;
        Ok(curve)
    }

    fn validate(&self) -> Result<()> {
        let branches: Vec<&Place> = self.nodes.iter().flat_map(|n| [&n.0, &n.1]).collect();
        for (i, a) in branches.iter().enumerate() {
            if branches[i + 1..].contains(a) {
                return Err(Error::Coincident(format!("branch point {a} used twice")));
            }
            if **a == Place::infinity(0) {
                return Err(Error::input("p must be a smooth point"));
            }
            if self.divisor.iter().any(|d| d.place == **a) {
                return Err(Error::input(format!(
                    "divisor is supported on the node branch {a}"
                )));
            }
        }
        if connected_components(&(0..self.components).collect::<Vec<_>>(), &self.nodes) != 1 {
            return Err(Error::input("curve must be connected"));
        }
        let deg = self.divisor_degree();
        if deg != self.genus() - 1 {
            return Err(Error::input(format!(
                "deg D = {deg}, need g - 1 = {}",
                self.genus() - 1
            )));
        }
        Ok(())
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn divisor(&self) -> &[DivisorTerm] {
        &self.divisor
    }

    pub fn divisor_degree(&self) -> i64 {
        self.divisor.iter().map(|d| d.multiplicity).sum()
    }

    /// Genus of the dual graph.
    pub fn genus(&self) -> i64 {
        self.nodes.len() as i64 - self.components as i64 + 1
    }

    /// The distinguished point, after normalization.
    pub fn p(&self) -> Place {
        Place::infinity(0)
    }

    /// Nodes with both branches among `comps`.
    pub fn nodes_within(&self, comps: &[usize]) -> Vec<&Node> {
        self.nodes
            .iter()
            .filter(|n| comps.contains(&n.0.component) && comps.contains(&n.1.component))
            .collect()
    }
}

/// `1 - chi(O)` of the subcurve made of `comps`: one minus the number of
/// components plus the number of nodes among them.
pub fn arithmetic_genus(curve: &NodalCurve, comps: &[usize]) -> i64 {
    1 - comps.len() as i64 + curve.nodes_within(comps).len() as i64
}
