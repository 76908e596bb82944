//! The `kpg` command line: argument parsing, JSON input, rendering and the
//! example gallery. `main` is a thin wrapper around [`execute`].

pub mod args;
pub mod commands;
pub mod error;
pub mod gallery;
pub mod input;
pub mod report;

use args::{Cli, Command, Format};
use error::{CliError, Result};
use report::Report;

/// Bytes for stdout and stderr plus the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Execution {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Execution {
    fn from_error(e: &CliError) -> Self {
        Execution {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Report> {
    if cli.format == Format::Ideal
        && !matches!(cli.command, Command::Hirota(args::HirotaCmd::Gens { .. }))
    {
        return Err(CliError::usage(
            "--format ideal applies to `hirota gens` only",
        ));
    }
    match &cli.command {
        Command::Tropical(c) => commands::tropical::run(c),
        Command::Hirota(c) => commands::hirota::run(c, cli.format),
        Command::Sato(c) => commands::sato::run(c),
        Command::Curve(c) => commands::curve::run(c),
        Command::Nodal(c) => commands::nodal::run(c),
        Command::Gallery(g) => gallery::run(g),
    }
}

/// Runs one parsed command line.
pub fn execute(cli: &Cli) -> Execution {
    match dispatch(cli) {
        Ok(r) => Execution {
            stdout: r.render(cli.format),
            stderr: r
                .note
                .as_ref()
                .map(|n| format!("{n}\n"))
                .unwrap_or_default(),
            code: r.code,
        },
        Err(e) => Execution::from_error(&e),
    }
}

/// Caps the global thread pool at `KPG_THREADS` when it is set.
pub fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("KPG_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::usage(format!("KPG_THREADS must be a positive integer, got {v:?}"))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::usage(format!("cannot configure {n} threads: {e}")))
}
