use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use sortition::experiments::{
    default_alpha_grid, default_s_grid, sweep_lambda_vs_alpha, sweep_lambda_vs_s, sweep_m_max, write_csv,
};
use sortition::{
    empirical_fairness, Algorithm, AnySortition, Error, PrngStream, Result, SelectionOutcome, SelectionParams,
    Sortition, WeightTable, DEFAULT_MAX_ROUNDS,
};

#[derive(Parser)]
#[command(name = "sortition", version, about = "Fair weighted committee selection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw one committee and print it as JSON.
    Select {
        #[command(flatten)]
        setup: Setup,
        #[arg(long)]
        seed: u64,
    },
    /// Print the decentralization report as JSON.
    Analyze {
        #[command(flatten)]
        setup: Setup,
    },
    /// Monte Carlo check that mean voting power matches weight.
    Fairness {
        #[command(flatten)]
        setup: Setup,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Zipf sweeps as CSV.
    Experiment {
        #[command(subcommand)]
        sweep: Sweep,
    },
}

#[derive(Args)]
struct Setup {
    #[arg(long)]
    algorithm: Algorithm,
    /// CSV file with header `id,weight`.
    #[arg(long)]
    weights: PathBuf,
    #[arg(long)]
    size: usize,
    /// WRS stake threshold as a fraction of total stake.
    #[arg(long)]
    alpha: Option<f64>,
    /// Stitch: shuffle participants before laying out intervals.
    #[arg(long)]
    permute: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
    max_rounds: u64,
}

impl Setup {
    fn load(&self) -> Result<(WeightTable, AnySortition)> {
        let table = WeightTable::from_path(&self.weights)?;
        let params = SelectionParams {
            algorithm: self.algorithm,
            size: self.size,
            alpha: self.alpha,
            permute: self.permute,
            max_rounds: self.max_rounds,
        };
        let alg = AnySortition::build(&table.stakes, &params)?;
        Ok((table, alg))
    }
}

#[derive(Subcommand)]
enum Sweep {
    /// Largest admissible committee size per s.
    Mmax {
        #[arg(long, default_value_t = 1000)]
        n: usize,
        /// Comma-separated s values.
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<f64>>,
    },
    /// λ of every algorithm per s.
    LambdaS {
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        m: usize,
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        alpha_grid: Option<Vec<f64>>,
    },
    /// WRS λ bound per α at one s.
    LambdaAlpha {
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        m: usize,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<f64>>,
    },
}

#[derive(Serialize)]
struct SelectOutput<'a> {
    algorithm: Algorithm,
    seed: u64,
    ids: Vec<&'a str>,
    #[serde(flatten)]
    outcome: SelectionOutcome,
}

fn print_json(value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Format(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Select { setup, seed } => {
            let (table, alg) = setup.load()?;
            let outcome = alg.select(&mut PrngStream::new(seed))?;
            print_json(&SelectOutput {
                algorithm: alg.algorithm(),
                seed,
                ids: outcome.seats.iter().map(|s| table.ids[s.index].as_str()).collect(),
                outcome,
            })
        }
        Command::Analyze { setup } => print_json(&setup.load()?.1.report()),
        Command::Fairness { setup, trials, seed } => print_json(&empirical_fairness(&setup.load()?.1, trials, seed)?),
        Command::Experiment { sweep } => {
            let out = std::io::stdout().lock();
            match sweep {
                Sweep::Mmax { n, grid } => write_csv(&sweep_m_max(n, &grid.unwrap_or_else(default_s_grid)), out),
                Sweep::LambdaS { n, m, grid, alpha_grid } => write_csv(
                    &sweep_lambda_vs_s(
                        n,
                        m,
                        &grid.unwrap_or_else(default_s_grid),
                        &alpha_grid.unwrap_or_else(default_alpha_grid),
                    )?,
                    out,
                ),
                Sweep::LambdaAlpha { n, m, s, grid } => write_csv(
                    &sweep_lambda_vs_alpha(n, m, s, &grid.unwrap_or_else(default_alpha_grid))?,
                    out,
                ),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => {
            let _ = std::io::stdout().flush();
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_feasibility() { 2 } else { 1 })
        }
    }
}
