//! `collectorlab` command-line front end.
//!
//! Exit status: 0 on success, 2 on invalid input or usage, 3 when a
//! numerical method could not reach its accuracy target.
//! `COLLECTORLAB_THREADS` caps simulator parallelism. All randomness derives
//! from `--seed`, which defaults to 0.

mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::CliError;

pub const THREADS_ENV: &str = "COLLECTORLAB_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "collectorlab",
    version,
    about = "Completion-time analysis for the coupon collector's problem"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    output: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Human,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Uniform,
    Zipf,
    Mixed,
    Custom,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    /// Coupon family
    #[arg(long, value_enum)]
    pub kind: KindArg,

    /// Number of coupon types (even, for the mixed kind)
    #[arg(long)]
    pub n: Option<usize>,

    /// Half size of a mixed family, N = 2m
    #[arg(long)]
    pub m: Option<usize>,

    /// Zipf exponent
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub p: f64,

    /// Comma-separated positive weights for the custom kind
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExactMethod {
    Integral,
    InclusionExclusion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Moment {
    Mean,
    SecondRising,
    Variance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlanMethodArg {
    Gumbel,
    Exact,
    MonteCarlo,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe a coupon family
    Family(FamilyArgs),

    /// Exact moments of the completion time
    Exact {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = ExactMethod::Integral)]
        method: ExactMethod,
        /// Relative quadrature tolerance
        #[arg(long)]
        tol: Option<f64>,
        /// Subdivision budget per integral
        #[arg(long)]
        max_subdivisions: Option<usize>,
    },

    /// Large-N expansion, term by term
    Asym {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = Moment::Mean)]
        moment: Moment,
    },

    /// Monte Carlo simulation of completion times
    Simulate {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 100_000)]
        replicates: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write sorted completion times, one per line, to this file
        #[arg(long)]
        dump: Option<PathBuf>,
    },

    /// Trials needed for a complete set with probability at least q
    Plan {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        q: f64,
        #[arg(long, value_enum, default_value_t = PlanMethodArg::Gumbel)]
        method: PlanMethodArg,
        /// Replicates for the Monte Carlo method
        #[arg(long, default_value_t = 100_000)]
        replicates: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// KS distance to the Gumbel limit along a ladder of sizes
    KsTrend {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        p: f64,
        /// Ascending sizes (m for the mixed kind)
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 100_000)]
        replicates: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// W_k and Q_k integrals and the mixed-family decomposition check
    WkCheck {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        p: f64,
        /// Relative quadrature tolerance
        #[arg(long)]
        tol: Option<f64>,
        /// Subdivision budget per integral
        #[arg(long)]
        max_subdivisions: Option<usize>,
    },

    /// Recompute the N = 100, q = 0.90 worked example
    ReproduceExample,
}

fn threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got {s:?}"
            ))),
        },
    }
}

fn run(cli: Cli) -> Result<render::Document, CliError> {
    use commands::*;
    match cli.command {
        Command::Family(f) => family(&f),
        Command::Exact {
            family,
            method,
            tol,
            max_subdivisions,
        } => exact(&family, method, settings(tol, max_subdivisions)?),
        Command::Asym { family, moment } => asym(&family, moment),
        Command::Simulate {
            family,
            replicates,
            seed,
            dump,
        } => simulate(&family, replicates, seed, dump.as_deref(), threads_from_env()?),
        Command::Plan {
            family,
            q,
            method,
            replicates,
            seed,
        } => plan(&family, q, method, replicates, seed, threads_from_env()?),
        Command::KsTrend {
            kind,
            p,
            sizes,
            replicates,
            seed,
        } => ks_trend(kind, p, &sizes, replicates, seed, threads_from_env()?),
        Command::WkCheck {
            m,
            p,
            tol,
            max_subdivisions,
        } => wk_check(m, p, settings(tol, max_subdivisions)?),
        Command::ReproduceExample => reproduce_example(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // Help and version exit 0 on stdout; usage errors exit 2 on stderr.
        Err(e) => e.exit(),
    };
    let format = cli.output;
    match run(cli) {
        Ok(doc) => {
            let (out, side) = doc.render(format);
            if let Some(line) = side {
                eprintln!("{line}");
            }
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
