use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qhodge", version, about = "Exact periods, instanton numbers and Hodge data for mirror symmetry examples")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Series truncation order (number of coefficients).
    #[arg(long, global = true, default_value_t = 12)]
    pub order: usize,
    /// Decimal digits for numeric evaluations.
    #[arg(long, global = true, env = "QHODGE_PRECISION", default_value_t = 20)]
    pub precision: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Directory for cached tables and series.
    #[arg(long, global = true, env = "QHODGE_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mirror quintic B-model and A-model pipelines.
    #[command(subcommand)]
    Quintic(QuinticCmd),
    /// Local P2 (canonical bundle) pipelines.
    #[command(subcommand)]
    Localp2(LocalCmd),
    /// Two-parameter model and its q1 -> 0 limit.
    #[command(subcommand)]
    Twoparam(TwoParamCmd),
    /// Filtration tools on a JSON input document.
    #[command(subcommand)]
    Mhs(MhsCmd),
    /// Runs every invariant check.
    Selftest,
}

#[derive(Debug, Subcommand)]
pub enum QuinticCmd {
    /// Frobenius series A_0..A_3.
    Periods,
    MirrorMap,
    Yukawa,
    /// GW invariants N_d and instanton numbers n_d.
    Gw {
        #[arg(long)]
        upto: Option<usize>,
    },
    HodgeBasis,
    Lmhs,
    GammaCheck,
}

#[derive(Debug, Subcommand)]
pub enum LocalCmd {
    Periods,
    MirrorMap,
    Gw {
        #[arg(long)]
        upto: Option<usize>,
    },
    Prepotential,
    NablaCheck,
    /// Coefficients of c(Q).
    Syz,
    /// GW growth rate against exp(2π Im T0).
    Regulator {
        #[arg(long, default_value_t = 150)]
        max_d: usize,
    },
}

#[derive(Debug, Clone, Args)]
pub struct TwoParamArgs {
    /// JSON table of rows [d1, d2, "num/den"]; defaults to the local row only.
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Number of q1 coefficients kept.
    #[arg(long, default_value_t = 3)]
    pub n1: usize,
}

#[derive(Debug, Subcommand)]
pub enum TwoParamCmd {
    LimitCheck(TwoParamArgs),
    BasisCheck(TwoParamArgs),
}

#[derive(Debug, Clone, Args)]
pub struct MhsArgs {
    /// Input document, `-` for stdin.
    #[arg(default_value = "-")]
    pub input: PathBuf,
    /// Overrides `center` from the input.
    #[arg(long, allow_negative_numbers = true)]
    pub center: Option<i32>,
}

#[derive(Debug, Subcommand)]
pub enum MhsCmd {
    WeightFiltration(MhsArgs),
    Bigrading(MhsArgs),
    RelativeCheck(MhsArgs),
}
