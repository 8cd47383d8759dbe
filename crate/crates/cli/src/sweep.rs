//! Parameter sweeps over a base scenario.

use rayon::prelude::*;

use crate::config::{scenario_from_value, Axis, SweepSection, DEFAULT_MAX_POINTS};
use crate::error::{CliError, CliResult};
use crate::runner::run_scenario;
use crate::table::{Cell, Table};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub table: Table,
    pub failed: usize,
    pub total: usize,
}

fn set_path(doc: &mut toml::Value, path: &str, value: toml::Value) -> CliResult<()> {
    let keys: Vec<&str> = path.split('.').collect();
    if keys.iter().any(|k| k.is_empty()) || keys[0] == "sweep" {
        return Err(CliError::parse(format!("sweep axis `{path}`: not a valid parameter path")));
    }
    let mut node = doc;
    for key in &keys[..keys.len() - 1] {
        let table = node
            .as_table_mut()
            .ok_or_else(|| CliError::parse(format!("sweep axis `{path}`: `{key}` is not inside a table")))?;
        node = table.entry(key.to_string()).or_insert_with(|| toml::Value::Table(toml::Table::new()));
    }
    let table = node
        .as_table_mut()
        .ok_or_else(|| CliError::parse(format!("sweep axis `{path}`: parent is not a table")))?;
    table.insert(keys[keys.len() - 1].to_string(), value);
    Ok(())
}

fn axis_cell(v: &toml::Value) -> Cell {
    match v {
        toml::Value::Float(x) => Cell::Float(*x),
        toml::Value::Integer(i) => Cell::Int(*i),
        toml::Value::String(s) => Cell::Text(s.clone()),
        toml::Value::Boolean(b) => Cell::Bool(*b),
        other => Cell::Text(other.to_string()),
    }
}

/// All grid points in lexicographic order, the first axis varying slowest.
fn grid_points(axes: &[Axis], max_points: usize) -> CliResult<Vec<Vec<toml::Value>>> {
    let grids: Vec<Vec<toml::Value>> = axes.iter().map(Axis::points).collect::<CliResult<_>>()?;
    let total = grids.iter().try_fold(1usize, |acc, g| acc.checked_mul(g.len()));
    match total {
        Some(n) if n <= max_points => {}
        _ => return Err(CliError::parse(format!("sweep: more than {max_points} grid points"))),
    }
    let mut points = vec![Vec::new()];
    for grid in &grids {
        points = points
            .into_iter()
            .flat_map(|p| {
                grid.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(v.clone());
                    q
                })
            })
            .collect();
    }
    Ok(points)
}

/// Runs every grid point of a sweep document on a pool of `jobs` threads.
/// Rows come out in grid order whatever the execution order; a failing
/// point leaves an error row.
pub fn run_sweep(text: &str, tolerance_flag: Option<f64>, jobs: usize) -> CliResult<SweepOutcome> {
    let mut doc: toml::Value = toml::from_str(text).map_err(|e| CliError::parse(format!("sweep: {e}")))?;
    let section = doc
        .as_table_mut()
        .and_then(|t| t.remove("sweep"))
        .ok_or_else(|| CliError::parse("sweep: missing [sweep] table"))?;
    let section: SweepSection = section.try_into().map_err(|e: toml::de::Error| CliError::parse(format!("sweep: {e}")))?;
    if section.axes.is_empty() {
        return Err(CliError::parse("sweep: at least one axis is required"));
    }
    if jobs == 0 {
        return Err(CliError::invalid("jobs", "must be >= 1"));
    }
    let points = grid_points(&section.axes, section.max_points.unwrap_or(DEFAULT_MAX_POINTS))?;
    let paths: Vec<String> = section.axes.iter().map(|a| a.path.clone()).collect();

    let documents: Vec<CliResult<toml::Value>> = points
        .iter()
        .map(|values| {
            let mut d = doc.clone();
            for (path, v) in paths.iter().zip(values) {
                set_path(&mut d, path, v.clone())?;
            }
            Ok(d)
        })
        .collect();
    if let Some(Err(e)) = documents.iter().find(|d| d.is_err()) {
        return Err(CliError::parse(e.to_string()));
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Io(format!("thread pool: {e}")))?;
    let results: Vec<CliResult<Table>> = pool.install(|| {
        documents
            .into_par_iter()
            .map(|d| {
                let scenario = scenario_from_value(d?)?;
                run_scenario(&scenario, tolerance_flag)
            })
            .collect()
    });

    let result_columns = results
        .iter()
        .find_map(|r| r.as_ref().ok().map(|t| t.columns.clone()))
        .unwrap_or_else(|| vec!["error".to_string()]);
    let mut columns = paths.clone();
    columns.extend(result_columns.iter().cloned());
    let mut table = Table::new(&columns);
    let mut failed = 0;
    for (values, result) in points.iter().zip(results) {
        let prefix: Vec<Cell> = values.iter().map(axis_cell).collect();
        let outcome = result.and_then(|t| {
            if t.columns == result_columns {
                Ok(t)
            } else {
                Err(CliError::parse("columns differ from the first successful point"))
            }
        });
        match outcome {
            Ok(t) => {
                for row in t.rows {
                    let mut full = prefix.clone();
                    full.extend(row);
                    table.push(full);
                }
            }
            Err(e) => {
                failed += 1;
                log::warn!("sweep point failed: {e}");
                let mut full = prefix;
                full.push(Cell::Text(format!("error:{}", e.kind())));
                full.resize(columns.len(), Cell::Empty);
                table.push(full);
            }
        }
    }
    Ok(SweepOutcome { table, failed, total: points.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order() {
        let axes: Vec<Axis> = toml::from_str::<SweepSection>(
            "axes = [{ path = \"a\", values = [1, 2] }, { path = \"b\", values = [\"x\", \"y\", \"z\"] }]",
        )
        .unwrap()
        .axes;
        let p = grid_points(&axes, 100).unwrap();
        assert_eq!(p.len(), 6);
        assert_eq!(p[1], vec![toml::Value::Integer(1), toml::Value::String("y".into())]);
        assert_eq!(p[3], vec![toml::Value::Integer(2), toml::Value::String("x".into())]);
        assert!(grid_points(&axes, 5).is_err());
    }

    #[test]
    fn dotted_paths() {
        let mut doc: toml::Value = toml::from_str("kind = \"mirror\"\n[mirror]\na0 = 1.0").unwrap();
        set_path(&mut doc, "mirror.theta", toml::Value::Float(0.3)).unwrap();
        set_path(&mut doc, "grid.count", toml::Value::Integer(3)).unwrap();
        assert_eq!(doc["mirror"]["theta"].as_float(), Some(0.3));
        assert_eq!(doc["grid"]["count"].as_integer(), Some(3));
        assert!(set_path(&mut doc, "kind.x", toml::Value::Integer(1)).is_err());
        assert!(set_path(&mut doc, "sweep.axes", toml::Value::Integer(1)).is_err());
    }
}
