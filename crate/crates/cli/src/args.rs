use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "isospec",
    version,
    about = "Dirichlet and Neumann eigenvalue inequalities on planar domains"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the k-th positive zeros of J_order and J′_order.
    Bessel {
        order: f64,
        #[arg(default_value_t = 1)]
        k: usize,
    },
    /// Compute and extrapolate the lowest eigenvalues of each domain.
    Eigs {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Kind::Dirichlet)]
        kind: Kind,
    },
    /// Run every applicable inequality check on each domain.
    Check(RunArgs),
    /// Replay the trial-function argument of the gap-sum lower bound.
    Proofcheck(RunArgs),
    /// Check a family of domains and report the smallest margins.
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Family::All)]
        family: Family,
        /// Members per family (rectangles default to aspect 1, 1.5, …, 8).
        #[arg(long)]
        samples: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Dirichlet,
    Neumann,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Rectangles,
    Ellipses,
    Polygons,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// TOML file with a [run] table and [[domain]] entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub domain: DomainArgs,
    /// Grid spacings, coarsest first, each half the previous.
    #[arg(long, value_delimiter = ',')]
    pub h: Option<Vec<f64>>,
    /// Number of eigenvalues to compute.
    #[arg(long)]
    pub k: Option<usize>,
    /// Relative residual required of the eigensolver.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Solve balls on the grid instead of using closed forms.
    #[arg(long)]
    pub numeric_balls: bool,
}

#[derive(Debug, Clone, Default, Args)]
pub struct DomainArgs {
    /// ball, disk, rectangle, ellipse, annulus, lshape, stadium or polygon.
    #[arg(long)]
    pub shape: Option<String>,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long)]
    pub width: Option<f64>,
    #[arg(long)]
    pub height: Option<f64>,
    /// Ellipse semi-axis along x.
    #[arg(long)]
    pub a: Option<f64>,
    /// Ellipse semi-axis along y.
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub r_in: Option<f64>,
    #[arg(long)]
    pub r_out: Option<f64>,
    #[arg(long)]
    pub length: Option<f64>,
    /// Polygon vertices as "x,y;x,y;…", counter-clockwise.
    #[arg(long, allow_hyphen_values = true)]
    pub vertices: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub tx: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub ty: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
}
