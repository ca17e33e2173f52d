use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qdemon::sweep::{self, SweepConfig};
use qdemon::verify::{self, VerifyConfig};
use qdemon::{config, report, CliError};
use qdemon_core::ScenarioId;

#[derive(Parser)]
#[command(
    version,
    about = "Two-stroke quantum heat engines with a Maxwell-demon memory"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one cycle of a two-qubit scenario and print every quantity
    Cycle {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        scenario: ScenarioId,
        /// Qubit 1 bath temperature in mK; defaults to the config value
        #[arg(long)]
        t1: Option<f64>,
    },
    /// Sweep the qubit 1 bath temperature and write a CSV
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated scenario names
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "e-fine,e-coarse,bell-fine,bell-coarse,extra-coarse"
        )]
        scenarios: Vec<ScenarioId>,
        #[arg(long = "t1-min")]
        t1_min: f64,
        #[arg(long = "t1-max")]
        t1_max: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the cycle inequalities and ergotropy properties on random engines
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Instances per dimension signature
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Comma-separated partition dimensions, e.g. 2x2,2x3,2x2x2
        #[arg(long, default_value = "2x2,2x3,2x2x2")]
        dims: String,
    },
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Cycle {
            config,
            scenario,
            t1,
        } => {
            let mut params = config::load(&config)?;
            if let Some(t1) = t1 {
                params = params.with_t1(t1);
            }
            params
                .validate()
                .map_err(|e| CliError::InvalidArgument(e.to_string()))?;
            let r = sweep::scenario_cycle(scenario, &params)?;
            print!("{}", report::render(scenario, &params, &r));
        }
        Command::Sweep {
            config,
            scenarios,
            t1_min,
            t1_max,
            steps,
            out,
        } => {
            let sweep = SweepConfig {
                params: config::load(&config)?,
                t1_min_mk: t1_min,
                t1_max_mk: t1_max,
                steps,
                scenarios,
                output_path: out,
            };
            let rows = sweep::run(&sweep)?;
            eprintln!("wrote {rows} rows to {}", sweep.output_path.display());
        }
        Command::Verify { seed, trials, dims } => {
            let config = VerifyConfig {
                seed,
                trials,
                dims: verify::parse_dims_list(&dims)?,
            };
            let summary = verify::run(&config)?;
            println!("{summary}");
            if summary.failures() > 0 {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
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
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
