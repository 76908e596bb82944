use std::collections::BTreeMap;

use kpg_core::algebra::RF;
use kpg_core::hirota::{
    cube_param, hirota_generators, hirota_residual, prism_param, residual_vanishes, simplex,
    simplex_param, ThetaSum, WeightedPoint,
};
use serde_json::{json, Value};

use crate::args::{Family, Format, HirotaCmd};
use crate::error::{CliError, Result};
use crate::input::{load, rf_list, ConfigJson, PointJson};
use crate::report::{int_vec, join, rf_json, rf_list as rf_list_json, Header, Report};

fn pair_list(pairs: &[(usize, usize)]) -> String {
    pairs
        .iter()
        .map(|(k, l)| format!("({k},{l})"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn residual_report(r: &mut Report, res: &BTreeMap<Vec<i64>, RF>) {
    let mut entries = Vec::new();
    for (d, c) in res {
        r.line(format!("  {}: {c}", int_vec(d)));
        entries.push(json!({"d": d, "coefficient": rf_json(c)}));
    }
    let ok = residual_vanishes(res);
    r.line(format!("residual vanishes: {ok}"));
    r.set("residual", entries);
    r.set("vanishes", ok);
}

fn point_report(r: &mut Report, theta: &ThetaSum, point: &WeightedPoint) {
    r.line(format!("a: {}", join(&theta.a)));
    r.line(format!("u: {}", join(&point.u)));
    r.line(format!("v: {}", join(&point.v)));
    r.line(format!("w: {}", join(&point.w)));
    r.set("a", rf_list_json(&theta.a));
    r.set("u", rf_list_json(&point.u));
    r.set("v", rf_list_json(&point.v));
    r.set("w", rf_list_json(&point.w));
}

pub fn run(cmd: &HirotaCmd, format: Format) -> Result<Report> {
    match cmd {
        HirotaCmd::Gens { config } => {
            let (c, file) = load::<ConfigJson>(config)?;
            let config = c.build()?;
            let ideal = hirota_generators(&config);
            let mut header = Header::new("hirota gens");
            header.inputs.push(file);
            let mut vars = std::collections::BTreeSet::new();
            for g in &ideal.generators {
                vars.extend(g.poly.vars().into_iter().map(|v| v.name().to_string()));
            }
            header.variables = vars;
            let mut r = Report::new(header);
            if format == Format::Ideal {
                r.raw = Some(ideal.to_ideal_string() + "\n");
                return Ok(r);
            }
            r.line(format!("points: {}", config.len()));
            r.line(format!("generators: {}", ideal.generators.len()));
            let mut gens = Vec::new();
            for g in &ideal.generators {
                let kind = if g.unique { "unique" } else { "sum" };
                let mut at = int_vec(&g.d);
                for d in &g.also {
                    at += &format!(" {}", int_vec(d));
                }
                r.line(format!("[{kind}] d = {at} pairs {}", pair_list(&g.pairs)));
                r.line(format!("  {}", g.poly));
                gens.push(json!({
                    "d": g.d,
                    "also": g.also,
                    "pairs": g.pairs,
                    "unique": g.unique,
                    "poly": g.poly.to_string(),
                }));
            }
            r.set("points", config.len());
            r.set("generators", gens);
            Ok(r)
        }
        HirotaCmd::Check { config, point } => {
            let (c, cfile) = load::<ConfigJson>(config)?;
            let (p, pfile) = load::<PointJson>(point)?;
            let config = c.build()?;
            let (point, a) = p.build()?;
            let theta = match a {
                Some(a) => ThetaSum::new(config, a)?,
                None => ThetaSum::generic(config),
            };
            let mut header = Header::new("hirota check");
            header.inputs.extend([cfile, pfile]);
            header.track(
                theta
                    .a
                    .iter()
                    .chain(&point.u)
                    .chain(&point.v)
                    .chain(&point.w),
            );
            let res = hirota_residual(&theta, &point)?;
            let mut r = Report::new(header);
            point_report(&mut r, &theta, &point);
            r.line("residual:");
            residual_report(&mut r, &res);
            Ok(r)
        }
        HirotaCmd::Param {
            family,
            kappa,
            lambda,
            negate_v,
        } => {
            let kappa = rf_list(kappa)?;
            let lambda = lambda.as_deref().map(rf_list).transpose()?;
            let (theta, point, name) = match family {
                Family::Simplex => {
                    if lambda.is_some() {
                        return Err(CliError::usage(
                            "the simplex parametrization takes no --lambda",
                        ));
                    }
                    let point = simplex_param(&kappa, *negate_v)?;
                    (
                        ThetaSum::generic(simplex(kappa.len() - 1)),
                        point,
                        "simplex",
                    )
                }
                Family::Cube | Family::Prism => {
                    if *negate_v {
                        return Err(CliError::usage("--negate-v applies to the simplex only"));
                    }
                    let lambda = lambda.ok_or_else(|| CliError::usage("--lambda is required"))?;
                    let (theta, point) = if *family == Family::Cube {
                        cube_param(&kappa, &lambda)?
                    } else {
                        prism_param(&kappa, &lambda)?
                    };
                    (
                        theta,
                        point,
                        if *family == Family::Cube {
                            "cube"
                        } else {
                            "prism"
                        },
                    )
                }
            };
            let mut header = Header::new(&format!("hirota param {name}"));
            header.track(
                theta
                    .a
                    .iter()
                    .chain(&point.u)
                    .chain(&point.v)
                    .chain(&point.w),
            );
            let res = hirota_residual(&theta, &point)?;
            let mut r = Report::new(header);
            r.line(format!("family: {name}"));
            r.set("family", Value::String(name.into()));
            point_report(&mut r, &theta, &point);
            r.line("residual:");
            residual_report(&mut r, &res);
            Ok(r)
        }
    }
}
