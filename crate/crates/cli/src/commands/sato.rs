use std::path::Path;

use kpg_core::algebra::RF;
use kpg_core::sato::{
    frame_from_soliton, plucker_vector, schur_coeffs, schur_sigma, soliton_residual, soliton_tau,
    tau_truncated, Frame, Partition, SolitonData, Tail,
};
use serde_json::{json, Value};

use crate::args::SatoCmd;
use crate::error::{CliError, Result};
use crate::input::{load, FrameJson, SolitonJson};
use crate::report::{join, rf_json, rf_list, rf_matrix, Header, Report};

/// `(lambda): c` for the nonzero coefficients.
pub fn coefficient_map<'a>(
    items: impl IntoIterator<Item = (&'a Partition, &'a RF)>,
) -> (String, Value) {
    let mut text = Vec::new();
    let mut obj = serde_json::Map::new();
    for (l, c) in items {
        if !c.is_zero() {
            text.push(format!("{l}: {c}"));
            obj.insert(l.to_string(), rf_json(c));
        }
    }
    (format!("{{{}}}", text.join(", ")), Value::Object(obj))
}

pub fn soliton_lines(r: &mut Report, s: &SolitonData) {
    r.line(format!("kappa: {}", join(s.kappa())));
    r.line(format!("(k, n) = ({}, {})", s.k(), s.n()));
    r.line("A:");
    let a = s.matrix();
    for row in &a {
        r.line(format!("  [{}]", join(row)));
    }
    r.set("kappa", rf_list(s.kappa()));
    r.set("A", rf_matrix(&a));
}

pub fn soliton_json(s: &SolitonData) -> Value {
    json!({"kappa": rf_list(s.kappa()), "A": rf_matrix(&s.matrix())})
}

/// Rows from the lowest leading row to the last row every column stores.
pub fn frame_json(frame: &Frame) -> Result<Value> {
    let lo = frame.leading_rows().into_iter().min().unwrap_or(0);
    let hi = frame
        .row_max()
        .unwrap_or_else(|| {
            frame
                .columns()
                .iter()
                .map(|c| c.top() - 1)
                .max()
                .unwrap_or(lo)
        })
        .max(lo);
    let mut cols = Vec::new();
    for j in 1..=frame.stored_columns() {
        let col: Vec<Value> = (lo..=hi)
            .map(|r| frame.entry(r, j).map(|e| rf_json(&e)))
            .collect::<kpg_core::Result<_>>()?;
        cols.push(Value::Array(col));
    }
    let tail = if frame.tail() == Tail::Identity {
        "identity"
    } else {
        "truncated"
    };
    Ok(json!({"tail": tail, "rows": [lo, hi], "ell": frame.ell(), "columns": cols}))
}

fn write_json(path: &Path, v: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(v).expect("values serialize") + "\n";
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

pub fn save_json(path: &Path, v: &Value) -> Result<()> {
    write_json(path, v)
}

fn exp_term(c: &RF, e: &[RF; 3]) -> String {
    format!("({c}) exp[({}) x + ({}) y + ({}) t]", e[0], e[1], e[2])
}

pub fn run(cmd: &SatoCmd) -> Result<Report> {
    match cmd {
        SatoCmd::Tau { frame, order } => {
            let (f, file) = load::<FrameJson>(frame)?;
            let frame = f.build()?;
            let mut header = Header::new("sato tau");
            header.inputs.push(file);
            header.order("n", order);
            let coeffs = plucker_vector(&frame, *order)?;
            header.track(coeffs.iter().map(|(_, c)| c));
            header.times();
            let tau = tau_truncated(&frame, *order)?;
            let mut r = Report::new(header);
            let (text, obj) = coefficient_map(coeffs.iter().map(|(l, c)| (l, c)));
            r.line(format!("ell: {}", frame.ell()));
            r.line(format!("sigma coefficients: {text}"));
            r.line(format!("tau[{order}] = {tau}"));
            r.set("ell", frame.ell());
            r.set("sigma_coefficients", obj);
            r.set("tau", tau.to_string());
            Ok(r)
        }
        SatoCmd::Soliton {
            soliton,
            schur_order,
            check_hirota,
            frame_out,
            frame_rows,
        } => {
            let (s, file) = load::<SolitonJson>(soliton)?;
            let s = s.build()?;
            let mut header = Header::new("sato soliton");
            header.inputs.push(file);
            header.order("schur", schur_order);
            header.track(s.kappa().iter().chain(s.plucker().values()));
            header.times();
            let mut r = Report::new(header);
            soliton_lines(&mut r, &s);
            let tau = soliton_tau(&s);
            r.line("tau:");
            let mut terms = Vec::new();
            for t in tau.terms() {
                r.line(format!("  {}", exp_term(&t.coeff, &t.exponent)));
                terms.push(json!({"coeff": rf_json(&t.coeff), "exponent": rf_list(&t.exponent)}));
            }
            r.set("tau", terms);
            let coeffs = schur_coeffs(&s, *schur_order);
            let (text, obj) = coefficient_map(&coeffs);
            r.line(format!("schur coefficients: {text}"));
            r.set("schur_coefficients", obj);
            if *check_hirota {
                let ok = kpg_core::hirota::residual_vanishes(&soliton_residual(&s)?);
                r.line(format!("hirota residual vanishes: {ok}"));
                r.set("hirota", ok);
            }
            if let (Some(path), Some(rows)) = (frame_out, frame_rows) {
                let frame = frame_from_soliton(&s, *rows)?;
                write_json(path, &frame_json(&frame)?)?;
            }
            Ok(r)
        }
        SatoCmd::Schur { partitions } => {
            let mut r = Report::new(Header::new("sato schur"));
            let mut out = serde_json::Map::new();
            for p in partitions {
                let l: Partition = p.parse()?;
                let sigma = schur_sigma(&l);
                r.line(format!("sigma{l} = {sigma}"));
                out.insert(l.to_string(), Value::String(sigma.to_string()));
            }
            r.header.times();
            r.set("schur", Value::Object(out));
            Ok(r)
        }
    }
}
