//! `abel-lab`: exact center, moment and decomposition computations from JSON inputs.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use input::CliError;

#[derive(Parser, Debug)]
#[command(name = "abel-lab", version, about = "Exact computations for parametric centers of the Abel equation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON input file.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Highest return-map order K.
    #[arg(long, global = true, default_value_t = 12)]
    pub kmax: usize,
    /// Highest moment index (default 2d).
    #[arg(long, global = true)]
    pub imax: Option<usize>,
    /// Highest index for double-moment checks.
    #[arg(long, global = true, default_value_t = 20)]
    pub nmax: usize,
    /// Degree bound d for zero spaces.
    #[arg(long, global = true)]
    pub degree: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = ParamArg::Eps)]
    pub param: ParamArg,
    #[arg(long, global = true, value_enum, default_value_t = DirectionArg::Forward)]
    pub direction: DirectionArg,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the randomized verification suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Verification suite: center, moments, decomp, trig or all.
    #[arg(long, global = true, default_value = "all")]
    pub suite: String,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Stratified return-map coefficients v_{k,j}.
    CenterTable,
    /// Iterated integrals and the printed low-order series.
    Iterated,
    /// Second Melnikov expressions D6, D7, D8 and the matching table entries.
    Melnikov,
    /// Moment sequences m_i(P,Q) and m_i(Q,P).
    Moments,
    /// Basis of the zero-moment space of P in degree d.
    Zspace,
    /// Indecomposable [a,b]-factors of P.
    Factors,
    /// Composition condition for (P, Q).
    Cc,
    /// Whether P is definite.
    Definite,
    /// Full structure report for (P, Q).
    Report,
    /// Trigonometric moments.
    TrigMoment,
    /// Validate a trigonometric family and check its moments.
    TrigFamily,
    /// Run the acceptance suites.
    Verify,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamArg {
    Eps,
    Delta,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectionArg {
    Forward,
    Backward,
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("ABEL_LAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Invalid(format!("ABEL_LAB_THREADS: expected a non-negative integer, got {raw:?}")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Compute(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| commands::run(&cli));
    match result {
        Ok(out) => {
            print!("{}", out.render(cli.json));
            ExitCode::from(if out.failed { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("abel-lab: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
