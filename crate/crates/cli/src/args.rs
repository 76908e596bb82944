use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    /// Comma separated generator list (hirota gens only).
    Ideal,
}

#[derive(Debug, Parser)]
#[command(
    name = "kpg",
    version,
    about = "KP tau functions and solitons from graphs, curves and nodal curves"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tropical Riemann matrices and Delaunay sets of metric graphs.
    #[command(subcommand)]
    Tropical(TropicalCmd),
    /// Hirota varieties of lattice configurations.
    #[command(subcommand)]
    Hirota(HirotaCmd),
    /// Frames, Schur expansions and soliton tau functions.
    #[command(subcommand)]
    Sato(SatoCmd),
    /// Hyperelliptic curves and their degenerations.
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Nodal rational curves.
    #[command(subcommand)]
    Nodal(NodalCmd),
    /// Run the bundled examples and compare with the golden outputs.
    Gallery(GalleryArgs),
}

#[derive(Debug, Subcommand)]
pub enum TropicalCmd {
    /// Print Q = Lambda Delta Lambda^T.
    QMatrix { graph: PathBuf },
    /// Delaunay set of a point of the Voronoi cell, or of every vertex orbit.
    Delaunay {
        graph: PathBuf,
        /// Comma separated coordinates, e.g. "1/2,1/2".
        #[arg(long)]
        a: Option<String>,
    },
    /// (vertices, facets) of the Delaunay polytopes over all orientations.
    Classify { graph: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Simplex,
    Cube,
    Prism,
}

#[derive(Debug, Subcommand)]
pub enum HirotaCmd {
    /// Generators of the Hirota variety.
    Gens { config: PathBuf },
    /// Hirota residual at a point.
    Check {
        config: PathBuf,
        #[arg(long)]
        point: PathBuf,
    },
    /// Residual of a known parametrization.
    Param {
        #[arg(value_enum)]
        family: Family,
        /// Spectral values; symbolic names are allowed.
        #[arg(long)]
        kappa: String,
        #[arg(long)]
        lambda: Option<String>,
        /// Use the component with v negated (simplex only).
        #[arg(long)]
        negate_v: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum SatoCmd {
    /// Truncated tau function of a frame.
    Tau {
        #[arg(long)]
        frame: PathBuf,
        #[arg(long)]
        order: usize,
    },
    /// Tau function, Schur expansion and Hirota check of a soliton.
    Soliton {
        soliton: PathBuf,
        #[arg(long, default_value_t = 4)]
        schur_order: usize,
        #[arg(long)]
        check_hirota: bool,
        /// Also write the frame of the soliton, known through this row count.
        #[arg(long, requires = "frame_rows")]
        frame_out: Option<PathBuf>,
        #[arg(long)]
        frame_rows: Option<i64>,
    },
    /// Schur polynomials sigma_lambda in (x, y, t).
    Schur {
        #[arg(required = true)]
        partitions: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CurveCmd {
    /// Truncated tau function of a hyperelliptic curve.
    Tau {
        curve: PathBuf,
        #[arg(long)]
        order: usize,
        /// Specialize eps to this value before computing.
        #[arg(long, conflicts_with = "eps_symbolic")]
        eps: Option<String>,
        /// Keep eps symbolic (the default).
        #[arg(long)]
        eps_symbolic: bool,
        /// Also report the lowest part of the Hirota form of tau.
        #[arg(long)]
        hirota: bool,
    },
    /// The degenerating family for kappa and its limit soliton.
    Degenerate {
        #[arg(long)]
        kappa: String,
        /// Compare Plücker vectors at eps -> 0 through this weight.
        #[arg(long)]
        order: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum NodalCmd {
    /// Run the nodal-curve algorithm.
    Solve {
        curve: PathBuf,
        /// Allow symbolic node coordinates.
        #[arg(long)]
        symbolic: bool,
        /// Write the resulting soliton as JSON.
        #[arg(long)]
        soliton_out: Option<PathBuf>,
    },
    /// Sample the KP solution of a soliton on a grid.
    Grid {
        soliton: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        y: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        t: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct GalleryArgs {
    /// Only run examples whose name contains this string.
    #[arg(long)]
    pub filter: Option<String>,
    #[arg(long)]
    pub fixtures: Option<PathBuf>,
    #[arg(long)]
    pub goldens: Option<PathBuf>,
    /// Rewrite the golden files instead of comparing.
    #[arg(long)]
    pub update: bool,
}
