use std::fmt::Write as _;

use kpg_core::nodal::{algorithm61, kp_solution_grid, GridRange, GridSpec, NodalOutcome};
use serde_json::json;

use super::sato::{save_json, soliton_json};
use crate::args::NodalCmd;
use crate::error::{CliError, Result};
use crate::input::{load, NodalJson, SolitonJson};
use crate::report::{join, rf_matrix, Header, Report};

/// Exit code of a run whose curve violates one of the two conditions.
pub const CONDITION_FAILURE: i32 = 3;

fn range(s: &str, axis: &str) -> Result<GridRange> {
    s.parse()
        .map_err(|e| CliError::usage(format!("--{axis}: {e}")))
}

pub fn run(cmd: &NodalCmd) -> Result<Report> {
    match cmd {
        NodalCmd::Solve {
            curve,
            symbolic,
            soliton_out,
        } => {
            let (c, file) = load::<NodalJson>(curve)?;
            let coords = c.coordinates()?;
            if !symbolic {
                if let Some(v) = coords.iter().find(|v| !v.is_constant()) {
                    return Err(CliError::usage(format!(
                        "coordinate {v} is symbolic; pass --symbolic"
                    )));
                }
            }
            let curve = c.build()?;
            let mut header = Header::new("nodal solve");
            header.inputs.push(file);
            header.track(&coords);
            let outcome = algorithm61(&curve)?;
            let mut r = Report::new(header);
            r.line(format!("components: {}", curve.components()));
            r.line(format!("genus: {}", curve.genus()));
            r.line(format!("deg D: {}", curve.divisor_degree()));
            r.set("components", curve.components());
            r.set("genus", curve.genus());
            r.set("divisor_degree", curve.divisor_degree());
            match outcome {
                NodalOutcome::Failed(f) => {
                    r.line("status: failed");
                    r.line(format!(
                        "reason: condition={} step={} dimension={} expected={}",
                        f.condition, f.step, f.dimension, f.expected
                    ));
                    r.set("status", "failed");
                    r.set(
                        "reason",
                        json!({
                            "condition": f.condition.to_string(),
                            "step": f.step,
                            "dimension": f.dimension,
                            "expected": f.expected,
                        }),
                    );
                    r.note = Some(f.to_string());
                    r.code = CONDITION_FAILURE;
                }
                NodalOutcome::Soliton(s) => {
                    let m = &s.matrix;
                    r.line("status: ok");
                    r.line(format!("kappa: {}", join(&m.kappa)));
                    r.line(format!("basis: {} sections", s.basis.len()));
                    for (i, q) in s.basis.iter().enumerate() {
                        r.line(format!("  Q{} = {q}", i + 1));
                    }
                    r.line(format!("A ({} x {}):", m.a.len(), m.a_cols));
                    for row in &m.a {
                        r.line(format!("  [{}]", join(row)));
                    }
                    r.line(format!("B ({} x {}):", m.b.len(), 2 * m.b.len()));
                    for row in &m.b {
                        r.line(format!("  [{}]", join(row)));
                    }
                    r.set("status", "ok");
                    r.set("kappa", crate::report::rf_list(&m.kappa));
                    r.set(
                        "basis",
                        s.basis.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                    );
                    r.set("A", rf_matrix(&m.a));
                    r.set("B", rf_matrix(&m.b));
                    if let Some(path) = soliton_out {
                        if m.rows() == 0 {
                            return Err(CliError::usage(
                                "the soliton matrix is empty; nothing to write",
                            ));
                        }
                        save_json(path, &soliton_json(&m.soliton()?))?;
                    }
                }
            }
            Ok(r)
        }
        NodalCmd::Grid {
            soliton,
            x,
            y,
            t,
            out,
        } => {
            let (s, file) = load::<SolitonJson>(soliton)?;
            let s = s.build()?;
            let grid = GridSpec {
                x: range(x, "x")?,
                y: range(y, "y")?,
                t: range(t, "t")?,
            };
            let mut header = Header::new("nodal grid");
            header.inputs.push(file);
            header.order("x", x);
            header.order("y", y);
            header.order("t", t);
            header.times();
            let samples = kp_solution_grid(&s, &grid)?;
            let mut csv = String::from("x,y,t,p\n");
            for p in &samples {
                let v = p.p.map_or("nan".to_string(), |v| v.to_string());
                writeln!(csv, "{},{},{},{v}", p.x, p.y, p.t).expect("string write");
            }
            let mut r = Report::new(header);
            match out {
                Some(path) => {
                    std::fs::write(path, &csv).map_err(|source| CliError::Write {
                        path: path.clone(),
                        source,
                    })?;
                    let name = path
                        .file_name()
                        .map(|n| n.to_string_lossy().into_owned())
                        .unwrap_or_default();
                    r.line(format!("samples: {}", samples.len()));
                    r.line(format!("written: {name}"));
                    r.set("samples", samples.len());
                    r.set("written", name);
                }
                None => r.raw = Some(csv),
            }
            Ok(r)
        }
    }
}
