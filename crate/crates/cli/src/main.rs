use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dce_cli::{estimate_file, run_file, sweep_file, CliError};

/// Photon creation in time-dependent cavities: scenario runner.
#[derive(Debug, Parser)]
#[command(name = "dce", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Scenario file (TOML)
    #[arg(long)]
    scenario: PathBuf,
    /// Output CSV; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Integration tolerance, overriding the file and DCE_TOLERANCE
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one scenario
    Run(Common),
    /// Run a parameter sweep
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Worker threads
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Laboratory feasibility estimates
    Estimate {
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        tolerance: Option<f64>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::parse(e.to_string().lines().next().unwrap_or("bad arguments").to_string());
            eprintln!("{e}");
            eprintln!("{}", err.to_json());
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    let result = match &cli.command {
        Command::Run(c) => run_file(&c.scenario, c.out.as_deref(), c.tolerance),
        Command::Sweep { common: c, jobs } => sweep_file(&c.scenario, c.out.as_deref(), c.tolerance, *jobs),
        Command::Estimate { scenario, out, tolerance } => estimate_file(scenario.as_deref(), out.as_deref(), *tolerance),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
