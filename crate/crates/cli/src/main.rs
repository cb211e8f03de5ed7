use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use driftwalk::placement::DEFAULT_BUDGET;
use driftwalk_cli::commands::{self, Method, Mode, OptimizeArgs};
use driftwalk_cli::spec_file::parse_probability;
use driftwalk_cli::{CliError, EnvironmentSpec, Output};

/// Exact hitting times and drift placement for random walks in two-drift environments.
///
/// Every command prints one JSON record per line on stdout. Exit codes:
/// 0 success, 1 validation, 2 budget or size, 3 internal invariant violation.
#[derive(Parser)]
#[command(name = "driftwalk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expected hitting time of N from a start site, with the full profile.
    HitTime {
        spec: PathBuf,
        #[arg(long, default_value_t = 0)]
        start: usize,
        #[arg(long, value_enum, default_value_t = Method::Recurrence)]
        method: Method,
    },
    /// Best placement of k strong drifts, exhaustive or sampled.
    Optimize {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = probability)]
        q: f64,
        #[arg(long, value_parser = probability)]
        p: f64,
        #[arg(long, value_enum, default_value_t = Mode::Brute)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also print the per-trial gap table as CSV (sample mode).
        #[arg(long)]
        csv: bool,
    },
    /// Asymptotic time per site for equally spaced drifts, with finite-k speeds.
    Limit {
        #[arg(long)]
        a: u32,
        #[arg(long, value_parser = probability)]
        q: f64,
        #[arg(long, value_parser = probability)]
        p: f64,
        #[arg(long, value_delimiter = ',', default_value = "50,100,200,400,1000")]
        k_list: Vec<usize>,
        /// Also print the convergence table as CSV.
        #[arg(long)]
        csv: bool,
    },
    /// Monte Carlo estimate of E[T_N] from site 0 and its z-score against the exact value.
    Simulate {
        spec: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        walks: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_steps: Option<u64>,
    },
    /// Interval sum, circle sum, the bound C(alpha) and the per-length sums.
    Sums {
        spec: PathBuf,
        /// Stop once the remaining window lengths contribute below 1e-15.
        #[arg(long)]
        truncate_sums: bool,
    },
}

fn probability(text: &str) -> Result<f64, String> {
    parse_probability(text)
}

fn load(path: &PathBuf) -> Result<EnvironmentSpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    Ok(EnvironmentSpec::parse(&text)?)
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::HitTime { spec, start, method } => commands::hit_time(&load(&spec)?, start, method),
        Command::Optimize {
            n,
            k,
            q,
            p,
            mode,
            budget,
            trials,
            seed,
            csv,
        } => commands::optimize(&OptimizeArgs {
            n,
            k,
            q,
            p,
            mode,
            budget,
            trials,
            seed,
            csv,
        }),
        Command::Limit { a, q, p, k_list, csv } => commands::limit(a, q, p, &k_list, csv),
        Command::Simulate {
            spec,
            walks,
            seed,
            max_steps,
        } => commands::simulate_cmd(&load(&spec)?, walks, seed, max_steps),
        Command::Sums {
            spec,
            truncate_sums,
        } => commands::sums(&load(&spec)?, truncate_sums),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            let mut stdout = std::io::stdout().lock();
            for record in &output.records {
                let _ = writeln!(stdout, "{record}");
            }
            if let Some(csv) = &output.csv {
                let _ = write!(stdout, "{csv}");
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
