//! Command-line front end for `dce-core`: runs scenario files and parameter
//! sweeps and writes plot-ready CSV.

pub mod config;
pub mod error;
pub mod runner;
pub mod sweep;
pub mod table;

use std::fs;
use std::io::Write;
use std::path::Path;

pub use config::{parse_scenario, Kind, Scenario};
pub use error::{CliError, CliResult};
pub use runner::{execute, prepare, resolve_tolerance, run_scenario, Plan, DEFAULT_TOLERANCE, TOLERANCE_ENV};
pub use sweep::{run_sweep, SweepOutcome};
pub use table::{Cell, Table};

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit(table: &Table, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => {
            let file = fs::File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let mut w = std::io::BufWriter::new(file);
            table.write_csv(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => table.write_csv(std::io::stdout().lock()),
    }
}

/// `run`: one scenario file to one CSV.
pub fn run_file(scenario: &Path, out: Option<&Path>, tolerance: Option<f64>) -> CliResult<()> {
    let s = parse_scenario(&read(scenario)?)?;
    if s.sweep.is_some() {
        return Err(CliError::parse("scenario has a [sweep] table; use the sweep subcommand"));
    }
    emit(&run_scenario(&s, tolerance)?, out)
}

/// `sweep`: all grid points of a sweep file to one CSV. The CSV is written
/// even when some points fail.
pub fn sweep_file(scenario: &Path, out: Option<&Path>, tolerance: Option<f64>, jobs: usize) -> CliResult<()> {
    let outcome = run_sweep(&read(scenario)?, tolerance, jobs)?;
    emit(&outcome.table, out)?;
    if outcome.failed > 0 {
        return Err(CliError::SweepFailures { failed: outcome.failed, total: outcome.total });
    }
    Ok(())
}

/// `estimate`: the laboratory estimates, from a file or with the default inputs.
pub fn estimate_file(scenario: Option<&Path>, out: Option<&Path>, tolerance: Option<f64>) -> CliResult<()> {
    let s = match scenario {
        Some(path) => parse_scenario(&read(path)?)?,
        None => parse_scenario("kind = \"estimate\"")?,
    };
    if s.kind != Kind::Estimate {
        return Err(CliError::parse("estimate expects a scenario of kind `estimate`"));
    }
    emit(&run_scenario(&s, tolerance)?, out)
}
