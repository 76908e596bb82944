use kpg_core::algebra::{parse_scalar_list, scalar_string, Scalar};
use kpg_core::tropical::{
    classify_delaunay, delaunay_set, riemann_matrix, voronoi_vertex_orbits, RiemannMatrix,
};
use serde_json::{json, Value};

use crate::args::TropicalCmd;
use crate::error::{CliError, Result};
use crate::input::{load, GraphJson};
use crate::report::{int_vec, Header, Report};

fn scalars(v: &[Scalar]) -> String {
    v.iter().map(scalar_string).collect::<Vec<_>>().join(", ")
}

fn scalars_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|s| Value::String(scalar_string(s))).collect())
}

fn load_q(path: &std::path::Path, header: &mut Header) -> Result<(RiemannMatrix, usize)> {
    let (g, file) = load::<GraphJson>(path)?;
    header.inputs.push(file);
    let graph = g.build()?;
    Ok((riemann_matrix(&graph)?, graph.genus()))
}

pub fn run(cmd: &TropicalCmd) -> Result<Report> {
    match cmd {
        TropicalCmd::QMatrix { graph } => {
            let mut header = Header::new("tropical q-matrix");
            let (q, g) = load_q(graph, &mut header)?;
            let mut r = Report::new(header);
            r.line(format!("genus: {g}"));
            r.line("Q:");
            for row in &q.0 {
                r.line(format!("  [{}]", scalars(row)));
            }
            r.line(format!("positive definite: {}", q.is_positive_definite()));
            r.set("genus", g);
            r.set(
                "Q",
                Value::Array(q.0.iter().map(|row| scalars_json(row)).collect()),
            );
            r.set("positive_definite", q.is_positive_definite());
            Ok(r)
        }
        TropicalCmd::Delaunay { graph, a } => {
            let mut header = Header::new("tropical delaunay");
            let (q, _) = load_q(graph, &mut header)?;
            let points: Vec<Vec<Scalar>> = match a {
                Some(s) => {
                    let a = parse_scalar_list(s)?;
                    if a.len() != q.dim() {
                        return Err(CliError::usage(format!(
                            "--a has {} coordinates, Q is {}x{}",
                            a.len(),
                            q.dim(),
                            q.dim()
                        )));
                    }
                    vec![a]
                }
                None => voronoi_vertex_orbits(&q),
            };
            let mut r = Report::new(header);
            let mut sets = Vec::new();
            for a in &points {
                let set = delaunay_set(&q, a)?;
                let pts: Vec<String> = set.points.iter().map(|p| int_vec(p)).collect();
                r.line(format!(
                    "a = ({}): {} points {}",
                    scalars(a),
                    set.points.len(),
                    pts.join(" ")
                ));
                sets.push(json!({"a": scalars_json(a), "points": set.points}));
            }
            r.set("delaunay_sets", sets);
            Ok(r)
        }
        TropicalCmd::Classify { graph } => {
            let (g, file) = load::<GraphJson>(graph)?;
            let mut header = Header::new("tropical classify");
            header.inputs.push(file);
            let graph = g.build()?;
            let types = classify_delaunay(&graph)?;
            let mut r = Report::new(header);
            r.line(format!("genus: {}", graph.genus()));
            r.line(format!("types: {}", types.len()));
            for (v, f) in &types {
                r.line(format!("  {v} vertices, {f} facets"));
            }
            r.set("genus", graph.genus());
            r.set(
                "types",
                types
                    .iter()
                    .map(|&(v, f)| json!({"vertices": v, "facets": f}))
                    .collect::<Vec<_>>(),
            );
            Ok(r)
        }
    }
}
