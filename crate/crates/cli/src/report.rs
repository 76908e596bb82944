//! Command output: a reproducibility header followed by a body rendered as
//! text or JSON.

use std::collections::BTreeSet;

use kpg_core::algebra::RF;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::args::Format;

/// Input file as seen by a job.
#[derive(Clone, Debug)]
pub struct InputFile {
    pub name: String,
    pub sha256: String,
}

impl InputFile {
    pub fn new(name: &str, bytes: &[u8]) -> Self {
        let digest = Sha256::digest(bytes);
        let sha256 = digest.iter().map(|b| format!("{b:02x}")).collect();
        InputFile {
            name: name.to_string(),
            sha256,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Header {
    pub command: String,
    pub inputs: Vec<InputFile>,
    pub orders: Vec<(String, String)>,
    pub variables: BTreeSet<String>,
}

impl Header {
    pub fn new(command: &str) -> Self {
        Header {
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn order(&mut self, name: &str, value: impl ToString) {
        self.orders.push((name.to_string(), value.to_string()));
    }

    pub fn track<'a>(&mut self, values: impl IntoIterator<Item = &'a RF>) {
        for v in values {
            self.variables
                .extend(v.vars().into_iter().map(|x| x.name().to_string()));
        }
    }

    /// The KP times `x, y, t`.
    pub fn times(&mut self) {
        self.variables.extend(["t", "x", "y"].map(String::from));
    }

    fn text(&self) -> String {
        let mut out = format!("# kpg {}\n", self.command);
        for f in &self.inputs {
            out += &format!("# input {} sha256:{}\n", f.name, f.sha256);
        }
        let orders: Vec<String> = self
            .orders
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        out += &format!(
            "# orders: {}\n",
            if orders.is_empty() {
                "none".into()
            } else {
                orders.join(" ")
            }
        );
        let vars: Vec<&str> = self.variables.iter().map(|s| s.as_str()).collect();
        out += &format!(
            "# variables: {}\n",
            if vars.is_empty() {
                "none".into()
            } else {
                vars.join(", ")
            }
        );
        out
    }

    fn json(&self) -> Value {
        let inputs: Vec<Value> = self
            .inputs
            .iter()
            .map(|f| json!({"name": f.name, "sha256": f.sha256}))
            .collect();
        let orders: Map<String, Value> = self
            .orders
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        json!({
            "command": self.command,
            "inputs": inputs,
            "orders": orders,
            "variables": self.variables.iter().collect::<Vec<_>>(),
        })
    }
}

/// Everything a job produces. `raw` replaces the rendered body when a
/// command has a dedicated output format (CSV, ideal lists).
#[derive(Clone, Debug)]
pub struct Report {
    pub header: Header,
    pub lines: Vec<String>,
    pub result: Map<String, Value>,
    pub raw: Option<String>,
    /// Message for stderr.
    pub note: Option<String>,
    pub code: i32,
}

impl Report {
    pub fn new(header: Header) -> Self {
        Report {
            header,
            lines: vec![],
            result: Map::new(),
            raw: None,
            note: None,
            code: 0,
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.result.insert(key.to_string(), v.into());
    }

    pub fn render(&self, format: Format) -> String {
        match (&self.raw, format) {
            (Some(raw), _) => format!("{}{raw}", self.header.text()),
            (None, Format::Json) => {
                let v = json!({"header": self.header.json(), "result": Value::Object(self.result.clone())});
                serde_json::to_string_pretty(&v).expect("values serialize") + "\n"
            }
            (None, _) => {
                let mut out = self.header.text();
                for l in &self.lines {
                    out += l;
                    out.push('\n');
                }
                out
            }
        }
    }
}

pub fn rf_json(r: &RF) -> Value {
    Value::String(r.to_string())
}

pub fn rf_list(rs: &[RF]) -> Value {
    Value::Array(rs.iter().map(rf_json).collect())
}

pub fn rf_matrix(rows: &[Vec<RF>]) -> Value {
    Value::Array(rows.iter().map(|r| rf_list(r)).collect())
}

pub fn join(rs: &[RF]) -> String {
    rs.iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn int_vec(v: &[i64]) -> String {
    let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", s.join(","))
}
