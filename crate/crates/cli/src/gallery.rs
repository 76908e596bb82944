//! Worked examples run in-process and compared byte for byte with the
//! golden outputs in `goldens/`.

use std::path::{Path, PathBuf};

use clap::Parser;
use rayon::prelude::*;
use similar::TextDiff;

use crate::args::{Cli, GalleryArgs};
use crate::error::{CliError, Result};
use crate::execute;
use crate::report::{Header, Report};

/// Name and argument list; `@` stands for the fixtures directory.
pub const EXAMPLES: &[(&str, &[&str])] = &[
    (
        "tropical-dumbbell-q",
        &["tropical", "q-matrix", "@/dumbbell.json"],
    ),
    (
        "tropical-theta-q",
        &["tropical", "q-matrix", "@/theta.json"],
    ),
    (
        "tropical-dumbbell-delaunay",
        &["tropical", "delaunay", "@/dumbbell.json", "--a", "1/2,1/2"],
    ),
    (
        "tropical-theta-delaunay",
        &["tropical", "delaunay", "@/theta.json"],
    ),
    (
        "tropical-theta-classify",
        &["tropical", "classify", "@/theta.json"],
    ),
    (
        "tropical-k4-classify",
        &["tropical", "classify", "@/k4.json"],
    ),
    ("hirota-square-gens", &["hirota", "gens", "@/square.json"]),
    (
        "hirota-square-ideal",
        &["--format", "ideal", "hirota", "gens", "@/square.json"],
    ),
    ("hirota-cube-gens", &["hirota", "gens", "@/cube.json"]),
    ("hirota-prism-gens", &["hirota", "gens", "@/prism.json"]),
    (
        "hirota-triangle-check",
        &[
            "hirota",
            "check",
            "@/triangle.json",
            "--point",
            "@/triangle_point.json",
        ],
    ),
    (
        "hirota-simplex-param",
        &["hirota", "param", "simplex", "--kappa", "k0,k1,k2"],
    ),
    (
        "hirota-simplex-param-negated",
        &[
            "hirota",
            "param",
            "simplex",
            "--kappa",
            "k0,k1,k2",
            "--negate-v",
        ],
    ),
    (
        "hirota-cube-param",
        &[
            "hirota",
            "param",
            "cube",
            "--kappa",
            "1,2,3,5,7,11",
            "--lambda",
            "1,2,3,5",
        ],
    ),
    (
        "hirota-prism-param",
        &[
            "hirota",
            "param",
            "prism",
            "--kappa",
            "1,2,4,7,11",
            "--lambda",
            "1,2,3,5",
        ],
    ),
    (
        "sato-schur",
        &["sato", "schur", "1,1", "2", "2,1", "2,2", "3,1", "2,1,1"],
    ),
    (
        "sato-soliton-123",
        &[
            "sato",
            "soliton",
            "@/soliton_123.json",
            "--schur-order",
            "4",
            "--check-hirota",
        ],
    ),
    (
        "sato-soliton-json",
        &[
            "--format",
            "json",
            "sato",
            "soliton",
            "@/soliton_123.json",
            "--schur-order",
            "2",
        ],
    ),
    (
        "sato-tau-frame",
        &["sato", "tau", "--frame", "@/frame_123.json", "--order", "4"],
    ),
    (
        "curve-tau-f2",
        &["curve", "tau", "@/f2.json", "--order", "2"],
    ),
    (
        "curve-tau-f2-hirota",
        &["curve", "tau", "@/f2.json", "--order", "5", "--hirota"],
    ),
    (
        "curve-tau-f2-eps",
        &["curve", "tau", "@/f2.json", "--order", "3", "--eps", "1/5"],
    ),
    (
        "curve-tau-pointed",
        &["curve", "tau", "@/pointed_d1.json", "--order", "3"],
    ),
    (
        "curve-degenerate",
        &["curve", "degenerate", "--kappa", "1,2,3", "--order", "4"],
    ),
    (
        "nodal-two-lines-p",
        &["nodal", "solve", "@/two_lines_p.json", "--symbolic"],
    ),
    (
        "nodal-two-lines-minus-2q-plus-3p",
        &[
            "nodal",
            "solve",
            "@/two_lines_minus_2q_plus_3p.json",
            "--symbolic",
        ],
    ),
    (
        "nodal-two-lines-3q-minus-2p",
        &[
            "nodal",
            "solve",
            "@/two_lines_3q_minus_2p.json",
            "--symbolic",
        ],
    ),
    (
        "nodal-two-lines-numeric",
        &["nodal", "solve", "@/two_lines_numeric.json"],
    ),
    (
        "nodal-four-lines",
        &["nodal", "solve", "@/four_lines.json", "--symbolic"],
    ),
    (
        "nodal-grid",
        &[
            "nodal",
            "grid",
            "@/one_soliton.json",
            "--x",
            "-4:4:0.5",
            "--y",
            "0",
            "--t",
            "0",
        ],
    ),
];

pub fn default_dir(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(name)
}

/// Output of one example as stored in its golden file.
pub fn render_example(args: &[&str], fixtures: &Path) -> String {
    let dir = fixtures.to_string_lossy();
    let argv: Vec<String> = std::iter::once("kpg".to_string())
        .chain(args.iter().map(|a| a.replacen('@', &dir, 1)))
        .collect();
    let out = match Cli::try_parse_from(&argv) {
        Ok(cli) => execute(&cli),
        Err(e) => return format!("usage error: {}\n# exit: 2\n", e.kind()),
    };
    let mut s = out.stdout;
    if !out.stderr.is_empty() {
        for l in out.stderr.lines() {
            s += &format!("# stderr: {l}\n");
        }
    }
    s + &format!("# exit: {}\n", out.code)
}

enum Status {
    Pass,
    Updated,
    Fail(String),
}

pub fn run(args: &GalleryArgs) -> Result<Report> {
    let fixtures = args
        .fixtures
        .clone()
        .unwrap_or_else(|| default_dir("fixtures"));
    let goldens = args
        .goldens
        .clone()
        .unwrap_or_else(|| default_dir("goldens"));
    let selected: Vec<&(&str, &[&str])> = EXAMPLES
        .iter()
        .filter(|(name, _)| args.filter.as_deref().is_none_or(|f| name.contains(f)))
        .collect();
    if selected.is_empty() {
        return Err(CliError::usage("no example matches the filter"));
    }
    let outputs: Vec<String> = selected
        .par_iter()
        .map(|(_, a)| render_example(a, &fixtures))
        .collect();
    let mut header = Header::new("gallery");
    if let Some(f) = &args.filter {
        header.order("filter", f);
    }
    let mut r = Report::new(header);
    let mut failed = 0;
    for ((name, _), got) in selected.iter().zip(&outputs) {
        let path = goldens.join(format!("{name}.txt"));
        let status = if args.update {
            std::fs::write(&path, got).map_err(|source| CliError::Write {
                path: path.clone(),
                source,
            })?;
            Status::Updated
        } else {
            match std::fs::read_to_string(&path) {
                Ok(want) if &want == got => Status::Pass,
                Ok(want) => Status::Fail(
                    TextDiff::from_lines(&want, got)
                        .unified_diff()
                        .header(&format!("goldens/{name}.txt"), "actual")
                        .to_string(),
                ),
                Err(e) => Status::Fail(format!("cannot read golden: {e}\n")),
            }
        };
        match status {
            Status::Pass => r.line(format!("PASS {name}")),
            Status::Updated => r.line(format!("UPDATED {name}")),
            Status::Fail(diff) => {
                failed += 1;
                r.line(format!("FAIL {name}"));
                r.lines.extend(diff.lines().map(String::from));
            }
        }
    }
    r.line(format!("{} examples, {failed} failed", selected.len()));
    r.set("examples", selected.len());
    r.set("failed", failed);
    if failed > 0 {
        r.code = 1;
    }
    Ok(r)
}
