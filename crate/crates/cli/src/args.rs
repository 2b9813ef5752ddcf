use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "s3coulomb",
    version,
    about = "Cotangent-perturbed motion on S^3: tables, spectra and identity checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Gegenbauer normalization used for the free basis.
    #[arg(long, global = true, default_value = "paper")]
    pub convention: String,

    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed for sampled points.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Gauss–Legendre order for norm integrals.
    #[arg(long, global = true, default_value_t = 64)]
    pub quad_order: usize,

    /// Replace P_l^l by P_l^0(±1) at θ ∈ {0, π} instead of failing.
    #[arg(long, global = true)]
    pub regularize_poles: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Energies ε_K(b) and degeneracies over a b-grid.
    Spectrum(SpectrumArgs),
    /// Expansion coefficients of ψ_K^l̃ in the free basis.
    Table1(Table1Args),
    /// Run the registered identity checks; exit status 1 if a hard check fails.
    Verify(VerifyArgs),
    /// |Y| or the damped |Ỹ| on a (χ, φ) grid at fixed θ.
    Sample(SampleArgs),
    /// Finite-difference eigenvalues of one radial channel.
    Eigensolve(EigensolveArgs),
    /// Entries of the connection matrix A_K(θ, φ).
    Matrix(MatrixArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[arg(long, default_value_t = 3)]
    pub kmax: u32,
    /// Explicit couplings; overrides the uniform grid.
    #[arg(long = "b")]
    pub b: Vec<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub b_min: f64,
    #[arg(long, default_value_t = 4.0)]
    pub b_max: f64,
    #[arg(long, default_value_t = 0.1)]
    pub b_step: f64,
}

#[derive(Debug, Clone, Args)]
pub struct Table1Args {
    #[arg(long, default_value_t = 3)]
    pub kmax: u32,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 3)]
    pub kmax: u32,
    /// Couplings for the pointwise checks.
    #[arg(long = "b")]
    pub b: Vec<f64>,
    /// Sample points per pointwise check.
    #[arg(long, default_value_t = 50)]
    pub points: usize,
    /// Run only these checks (repeatable).
    #[arg(long = "check")]
    pub checks: Vec<String>,
    /// Print the registered check names and exit.
    #[arg(long)]
    pub list_checks: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, default_value_t = 1)]
    pub l: u32,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub m: i32,
    #[arg(long)]
    pub damped: bool,
    #[arg(long, default_value_t = 2.0)]
    pub b: f64,
    #[arg(long, default_value_t = FRAC_PI_2)]
    pub theta: f64,
    #[arg(long, default_value_t = 33)]
    pub n_chi: usize,
    #[arg(long, default_value_t = 32)]
    pub n_phi: usize,
}

#[derive(Debug, Clone, Args)]
pub struct EigensolveArgs {
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    /// Interior grid points.
    #[arg(long, default_value_t = 4096)]
    pub n: usize,
    #[arg(long, default_value_t = 4)]
    pub count: usize,
    /// Combine grids n and 2n+1.
    #[arg(long)]
    pub richardson: bool,
}

#[derive(Debug, Clone, Args)]
pub struct MatrixArgs {
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, default_value_t = FRAC_PI_2)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.0)]
    pub phi: f64,
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    /// One m̃ per row, comma separated; defaults to m̃_r = r.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub m_tilde: Option<Vec<i32>>,
}
