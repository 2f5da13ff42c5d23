//! Command-line arguments. Every argument struct round-trips through JSON
//! so that a `--config` file can override individual flags by name.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(
    name = "isopoly",
    version,
    about = "Point-interaction ground states and diagonal sums of equilateral polygons"
)]
pub struct Cli {
    /// Worker threads for batch computations (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// JSON object whose keys override the subcommand's flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ground state of the point-interaction Hamiltonian on a polygon.
    Spectrum(SpectrumArgs),
    /// Diagonal sums `D_m` and means `M_m`.
    Diagonals(DiagonalsArgs),
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Multi-start maximization of an objective.
    Search(SearchArgs),
    /// Random closed equilateral polygons.
    Sample(SampleArgs),
}

#[derive(Debug, Subcommand)]
pub enum Suite {
    /// Mode inequalities over all (N, m, r) up to Nmax.
    Sweeps(SweepArgs),
    /// Perturbations of the regular polygon.
    Local(LocalArgs),
    /// Global mean-diagonal bound on random polygons.
    P2(P2Args),
    /// Gradient and restricted Hessian at the regular polygon.
    Stationarity(StationarityArgs),
}

/// Where the polygon comes from: `--polygon` (inline JSON or a file),
/// `--random SEED`, or the regular polygon given by `--N`, `--d`, `--l`.
#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct PolygonArgs {
    /// Polygon JSON, inline or as a file path.
    #[arg(long)]
    pub polygon: Option<String>,
    /// Number of vertices of a generated polygon.
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub n: Option<usize>,
    /// Ambient dimension (2 or 3).
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Edge length of a generated polygon.
    #[arg(long, default_value_t = 1.0)]
    pub l: f64,
    /// Generate a random equilateral polygon with this seed instead of the
    /// regular one.
    #[arg(long)]
    pub random: Option<u64>,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct SpectrumArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub polygon: PolygonArgs,
    /// Coupling constant.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    /// `kmin:kmax:count` grid of λ_min(Γ(κ)) written as CSV.
    #[arg(long)]
    pub grid: Option<String>,
    /// CSV path for the grid (default: stdout after the JSON).
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct DiagonalsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub polygon: PolygonArgs,
    /// Diagonal order; all orders 2..=N/2 when omitted.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct SweepArgs {
    #[arg(long = "Nmax", default_value_t = 200)]
    #[serde(rename = "Nmax")]
    pub n_max: usize,
    /// Grid resolution of the auxiliary sine-inequality scan.
    #[arg(long, default_value_t = 1000)]
    pub scan_grid: usize,
    /// CSV path receiving every (N, m, r) row.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct LocalArgs {
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 1.0)]
    pub l: f64,
    /// Diagonal order (geometric mode).
    #[arg(long)]
    pub m: Option<usize>,
    /// Objective name (`D<m>`, `M<m>` or `eps1`); defaults to `D<m>`.
    #[arg(long)]
    pub objective: Option<String>,
    /// Coupling for the spectral objective.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Comma-separated amplitudes in units of `l`.
    #[arg(long, default_value = "1e-1,1e-2,1e-3")]
    pub amplitudes: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// CSV path for the quadratic-coefficient fits.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct P2Args {
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 1.0)]
    pub l: f64,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct StationarityArgs {
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 1.0)]
    pub l: f64,
    /// Diagonal order; all orders 2..=N/2 when omitted.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct SearchArgs {
    /// `D<m>`, `M<m>` or `eps1`; a bare `D` or `M` takes its order from `--m`.
    #[arg(long)]
    pub objective: String,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 1.0)]
    pub l: f64,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 16)]
    pub restarts: usize,
    /// Objective evaluations per chain.
    #[arg(long, default_value_t = 5000)]
    pub budget: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Skip the annealing phase.
    #[arg(long)]
    pub no_anneal: bool,
    #[arg(long, default_value_t = 0.1)]
    pub temperature: f64,
    #[arg(long, default_value_t = 0.95)]
    pub cooling: f64,
    #[arg(long, default_value_t = 10)]
    pub epochs: usize,
    #[arg(long, default_value_t = 10)]
    pub steps_per_epoch: usize,
    /// Annealing proposal length in units of `l`.
    #[arg(long, default_value_t = 0.1)]
    pub anneal_step: f64,
    /// CSV path for the per-chain traces.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
pub struct SampleArgs {
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 1.0)]
    pub l: f64,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also emit the bending-angle chart (planar polygons only).
    #[arg(long)]
    pub angles: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
