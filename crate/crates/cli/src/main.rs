//! `tbp`: design ultra-low-rate protograph LDPC codes and validate them.
//!
//! Exit codes: 0 success, 1 I/O or unexpected failure, 2 invalid input
//! (parse, validation, lifting, configuration), 3 undecodable ensemble.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;
mod output;

#[derive(Debug, Parser)]
#[command(name = "tbp", version, about = "Type-based protograph LDPC design toolkit")]
pub struct Cli {
    /// Master seed for every random choice of the run
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory for artifacts
    #[arg(long, global = true, default_value = "tbp-out")]
    out: PathBuf,
    /// Worker threads (0: one per core)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// JSON file with configuration overrides
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimize the occurrence vector of a type description with DE
    Optimize(OptimizeArgs),
    /// PEXIT threshold of a protomatrix or an assigned type description
    Threshold(ThresholdArgs),
    /// Expand a type description into a protomatrix
    Expand(ExpandArgs),
    /// Lift a type description to a binary one
    LiftType(LiftTypeArgs),
    /// Build a 4-cycle-free parity-check matrix (alist) from a protomatrix
    LiftPcm(LiftPcmArgs),
    /// Monte-Carlo FER/BER sweep with sum-product decoding
    Simulate(SimulateArgs),
    /// Secret key rate at an operating point
    Skr(SkrArgs),
}

/// Where the type description comes from.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct TdSource {
    /// Type description JSON file
    #[arg(long)]
    td: Option<PathBuf>,
    /// Built-in description: ldgm-family
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    source: TdSource,
    /// Number of optimizable check node occurrences
    #[arg(long)]
    h: Option<u32>,
    /// Target design rate, e.g. 1/10; solved for h
    #[arg(long, conflicts_with = "h")]
    rate: Option<String>,
    /// Population size NP
    #[arg(long)]
    np: Option<usize>,
    /// Differential weight F
    #[arg(long)]
    f: Option<f64>,
    /// Crossover rate CR
    #[arg(long)]
    cr: Option<f64>,
    /// Generations G
    #[arg(long)]
    generations: Option<usize>,
    /// Gauss-Hermite points of the J-function
    #[arg(long)]
    mu: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    /// Protomatrix JSON file
    #[arg(long, conflicts_with_all = ["td", "preset"])]
    protomatrix: Option<PathBuf>,
    /// Type description JSON file (needs --counts)
    #[arg(long)]
    td: Option<PathBuf>,
    #[arg(long)]
    preset: Option<String>,
    /// Optimizable check occurrence counts, comma separated
    #[arg(long)]
    counts: Option<String>,
    /// Maximum protomatrix entry e_p
    #[arg(long)]
    ep: Option<u32>,
    #[arg(long)]
    mu: Option<usize>,
    /// Lower bracket edge, Eb/N0 dB
    #[arg(long, allow_hyphen_values = true)]
    lo: Option<f64>,
    /// Upper bracket edge, Eb/N0 dB
    #[arg(long, allow_hyphen_values = true)]
    hi: Option<f64>,
    /// Bisection resolution in dB
    #[arg(long)]
    precision: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[command(flatten)]
    source: TdSource,
    /// Optimizable check occurrence counts, comma separated
    #[arg(long)]
    counts: String,
    /// Maximum protomatrix entry e_p of the result
    #[arg(long)]
    ep: Option<u32>,
}

#[derive(Debug, Args)]
pub struct LiftTypeArgs {
    #[command(flatten)]
    source: TdSource,
    /// Lifting factor q-tilde
    #[arg(long = "q-tilde", default_value_t = tbp_core::protograph::DEFAULT_TYPE_LIFT)]
    q_tilde: usize,
}

#[derive(Debug, Args)]
pub struct LiftPcmArgs {
    /// Protomatrix JSON file
    #[arg(long)]
    protomatrix: PathBuf,
    /// Lifting factor q
    #[arg(long)]
    q: usize,
    #[arg(long)]
    max_passes: Option<usize>,
    #[arg(long)]
    retries: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Parity-check matrix in alist format
    #[arg(long, conflicts_with = "protomatrix")]
    alist: Option<PathBuf>,
    /// Metadata written by lift-pcm (punctured positions)
    #[arg(long, requires = "alist")]
    meta: Option<PathBuf>,
    /// Lift this protomatrix instead of reading an alist
    #[arg(long, requires = "q")]
    protomatrix: Option<PathBuf>,
    #[arg(long)]
    q: Option<usize>,
    /// SNR grid start:step:stop in Es/N0 dB
    #[arg(long, allow_hyphen_values = true)]
    snr: String,
    /// Interpret the grid as Eb/N0
    #[arg(long)]
    eb: bool,
    #[arg(long)]
    max_frames: Option<u64>,
    /// Frame errors after which a point stops (0: never)
    #[arg(long)]
    target_errors: Option<u64>,
    /// Decoder iterations
    #[arg(long)]
    max_iter: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SkrArgs {
    /// Frame error rate
    #[arg(long)]
    fer: f64,
    /// Eve's Holevo information, bits per symbol
    #[arg(long, default_value_t = 0.0)]
    chi_be: f64,
    /// Reconciliation efficiency (with --i-ab)
    #[arg(long, requires = "i_ab", conflicts_with_all = ["rate", "es_n0", "eb_n0"])]
    beta: Option<f64>,
    /// Alice-Bob mutual information, bits per symbol
    #[arg(long, requires = "beta")]
    i_ab: Option<f64>,
    /// Code rate; I_AB is then the BI-AWGN capacity at the given SNR
    #[arg(long)]
    rate: Option<String>,
    #[arg(long, conflicts_with = "eb_n0", allow_hyphen_values = true)]
    es_n0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    eb_n0: Option<f64>,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    use tbp_core::Error;
    match err.downcast_ref::<Error>() {
        Some(Error::Undecodable { .. }) => 3,
        Some(
            Error::Parse { .. }
            | Error::Validation { .. }
            | Error::Domain { .. }
            | Error::Lifting(_)
            | Error::GirthRepair { .. }
            | Error::Config(_)
            | Error::SpaceTooLarge { .. },
        ) => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("TBP_LOG", "warn")).init();
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
