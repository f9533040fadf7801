use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twospin::oracle::Fault;

#[derive(Debug, Parser)]
#[command(
    name = "twospin",
    version,
    about = "Two-spin evolution under anisotropic Heisenberg and DM Hamiltonians"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every cross-check suite; exit 2 if any fails.
    Verify(VerifyArgs),
    /// Evolve the initial state to (θ, φ) or to time t.
    Evolve(EvolveArgs),
    /// Closed-form propagator at time t, checked against the matrix exponential.
    Propagator(PropagatorArgs),
    /// Fubini-Study metric of the evolution manifold.
    Metric(CommonArgs),
    /// Manifold class and periodicity case.
    Classify(CommonArgs),
    /// Concurrence along θ.
    Scan(ScanArgs),
    /// Concurrence curves for the Heisenberg and DM figures.
    FigureData(FigureArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    CorruptAlpha,
}

impl From<FaultArg> for Fault {
    fn from(f: FaultArg) -> Fault {
        match f {
            FaultArg::CorruptAlpha => Fault::CorruptAlpha,
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct CommonArgs {
    /// heisenberg | dm
    #[arg(long, default_value = "heisenberg")]
    pub model: String,

    /// Coupling J.
    #[arg(long = "J", default_value_t = 1.0, allow_hyphen_values = true)]
    pub coupling: f64,

    /// Anisotropy as "p/q" or a decimal.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub alpha: String,

    /// Longitudinal field h_z.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub hz: f64,

    /// Metric scale factor γ.
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,

    /// Four amplitudes "a,b,c,d", each "re", "imj" or "re±imj".
    #[arg(long, conflicts_with = "product", allow_hyphen_values = true)]
    pub state: Option<String>,

    /// Product state "chi,gamma,pattern" with pattern one of +-, -+, ++, --.
    /// Default: "π/2,0,+-".
    #[arg(long, allow_hyphen_values = true)]
    pub product: Option<String>,

    /// Angles on input are in degrees.
    #[arg(long)]
    pub degrees: bool,

    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// Random draws per suite.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,

    #[arg(long, default_value_t = 0x5eed_0f2a)]
    pub seed: u64,

    /// Run suites on one thread.
    #[arg(long)]
    pub sequential: bool,

    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<FaultArg>,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    #[arg(long, allow_hyphen_values = true, conflicts_with = "t")]
    pub theta: Option<f64>,

    #[arg(long, allow_hyphen_values = true, conflicts_with = "t")]
    pub phi: Option<f64>,

    /// Time; sets θ = 2Jt and φ = 2h_z t.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
}

#[derive(Debug, Args)]
pub struct PropagatorArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub t: f64,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// "lo,hi,n" in θ. Default: "0,π,361".
    #[arg(long, allow_hyphen_values = true)]
    pub theta_range: Option<String>,

    /// Comma-separated anisotropies; one curve each, overriding --alpha.
    #[arg(long, allow_hyphen_values = true)]
    pub alphas: Option<String>,

    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Comma-separated anisotropies.
    #[arg(long, default_value = "1,2,3", allow_hyphen_values = true)]
    pub alphas: String,

    /// Points over θ ∈ [0, π].
    #[arg(long, default_value_t = 721)]
    pub points: usize,

    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}
