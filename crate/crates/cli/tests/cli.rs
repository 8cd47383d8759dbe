use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn dce(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dce"));
    cmd.args(args).env_remove("DCE_TOLERANCE").env("RUST_LOG", "error");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stderr_json(out: &Output) -> serde_json::Value {
    let text = String::from_utf8_lossy(&out.stderr);
    let line = text.lines().rev().find(|l| l.starts_with('{')).expect("json diagnostic");
    serde_json::from_str(line).unwrap()
}

const RESONANCE: &str = "kind = \"resonance\"\n[grid]\nstop = 500.0\ncount = 6\n[resonance]\nomega0 = 1.0\nkappa = 0.01\nq = 100.0\n";

const STATS: &str = "kind = \"stats\"\nseed = 11\n[stats]\ndistribution = \"dce\"\nn_mean = 40.0\nm_max = 60\nsamples = 20000\n";

#[test]
fn run_writes_resonance_table() {
    let dir = TempDir::new().unwrap();
    let scenario = write(&dir, "r.toml", RESONANCE);
    let out = dir.path().join("r.csv");
    let o = dce(&["run", "--scenario", s(&scenario), "--out", s(&out)], &[]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "t,N,regime,zeta");
    assert_eq!(lines.len(), 7);
    assert!(!csv.contains('\r'));
    let last: Vec<&str> = lines[6].split(',').collect();
    let n: f64 = last[1].parse().unwrap();
    assert!((n - 0.5 * 5f64.exp()).abs() < 1e-9);
    assert!((n - 74.21).abs() < 5e-3);
    assert_eq!(last[2], "above_threshold");
}

#[test]
fn reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    for (name, text) in [("r.toml", RESONANCE), ("s.toml", STATS)] {
        let scenario = write(&dir, name, text);
        let a = dir.path().join("a.csv");
        let b = dir.path().join("b.csv");
        assert!(dce(&["run", "--scenario", s(&scenario), "--out", s(&a)], &[]).status.success());
        assert!(dce(&["run", "--scenario", s(&scenario), "--out", s(&b)], &[]).status.success());
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    }
    let other = write(&dir, "s2.toml", &STATS.replace("seed = 11", "seed = 12"));
    let c = dir.path().join("c.csv");
    assert!(dce(&["run", "--scenario", s(&other), "--out", s(&c)], &[]).status.success());
    assert_ne!(fs::read(dir.path().join("a.csv")).unwrap(), fs::read(&c).unwrap());
}

#[test]
fn empty_grid_is_a_parse_error() {
    let dir = TempDir::new().unwrap();
    let scenario = write(&dir, "e.toml", &RESONANCE.replace("stop = 500.0\ncount = 6", "times = []"));
    let o = dce(&["run", "--scenario", s(&scenario)], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "ParseError");
}

#[test]
fn malformed_and_invalid_inputs_exit_one() {
    let dir = TempDir::new().unwrap();
    let broken = write(&dir, "b.toml", "kind = \"resonance\"\n[resonance\n");
    assert_eq!(dce(&["run", "--scenario", s(&broken)], &[]).status.code(), Some(1));
    let negative = write(&dir, "n.toml", &RESONANCE.replace("kappa = 0.01", "kappa = -0.01"));
    let o = dce(&["run", "--scenario", s(&negative)], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "InvalidParameter");
    let o = dce(&["run", "--scenario", "/nonexistent/x.toml"], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(dce(&["run"], &[]).status.code(), Some(1));
}

#[test]
fn numerical_failures_exit_two() {
    let dir = TempDir::new().unwrap();
    // three modes cannot hold the cascade: the top mode takes > 5 %
    let truncated = write(
        &dir,
        "t.toml",
        "kind = \"cavity1d\"\n[grid]\nstop = 100.0\ncount = 3\n[cavity1d]\nn_modes = 3\nkappa = 0.005\nsampling = \"stroboscopic\"\n",
    );
    let o = dce(&["run", "--scenario", s(&truncated)], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"], "TruncationInsufficient");
    let no_change = write(
        &dir,
        "m.toml",
        "kind = \"mirror\"\n[mirror]\nanalysis = \"threshold\"\na0 = 1000.0\ntheta_range = [0.6, 1.0]\n",
    );
    let o = dce(&["run", "--scenario", s(&no_change)], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"], "NoSignChange");
}

#[test]
fn tolerance_precedence() {
    let dir = TempDir::new().unwrap();
    let scenario = write(&dir, "r.toml", RESONANCE);
    let with_file = write(&dir, "f.toml", &format!("tolerance = 1e-8\n{RESONANCE}"));
    // invalid values show which source wins
    assert_eq!(dce(&["run", "--scenario", s(&scenario)], &[("DCE_TOLERANCE", "0.5")]).status.code(), Some(1));
    assert_eq!(dce(&["run", "--scenario", s(&scenario)], &[("DCE_TOLERANCE", "abc")]).status.code(), Some(1));
    assert!(dce(&["run", "--scenario", s(&with_file)], &[("DCE_TOLERANCE", "0.5")]).status.success());
    assert_eq!(dce(&["run", "--scenario", s(&with_file), "--tolerance", "0.5"], &[]).status.code(), Some(1));
    assert!(dce(&["run", "--scenario", s(&scenario), "--tolerance", "1e-10"], &[("DCE_TOLERANCE", "0.5")])
        .status
        .success());
}

#[test]
fn single_point_sweep_matches_run() {
    let dir = TempDir::new().unwrap();
    let scenario = write(&dir, "r.toml", RESONANCE);
    let sweep = write(&dir, "s.toml", &format!("{RESONANCE}[sweep]\naxes = [{{ path = \"resonance.q\", values = [100.0] }}]\n"));
    let run_out = dir.path().join("run.csv");
    let sweep_out = dir.path().join("sweep.csv");
    assert!(dce(&["run", "--scenario", s(&scenario), "--out", s(&run_out)], &[]).status.success());
    assert!(dce(&["sweep", "--scenario", s(&sweep), "--out", s(&sweep_out)], &[]).status.success());
    let run = fs::read_to_string(run_out).unwrap();
    let swept = fs::read_to_string(sweep_out).unwrap();
    let strip = |l: &str| l.split_once(',').unwrap().1.to_string();
    let swept_rows: Vec<String> = swept.lines().skip(1).map(strip).collect();
    let run_rows: Vec<String> = run.lines().skip(1).map(String::from).collect();
    assert_eq!(swept_rows, run_rows);
    assert_eq!(swept.lines().next().unwrap(), format!("resonance.q,{}", run.lines().next().unwrap()));
}

#[test]
fn parallelism_does_not_change_output() {
    let dir = TempDir::new().unwrap();
    let sweep = write(
        &dir,
        "s.toml",
        &format!(
            "{STATS}[sweep]\naxes = [{{ path = \"stats.n_mean\", values = [10.0, 20.0, 30.0] }}, {{ path = \"seed\", values = [1, 2, 3] }}]\n"
        ),
    );
    let one = dir.path().join("1.csv");
    let eight = dir.path().join("8.csv");
    assert!(dce(&["sweep", "--scenario", s(&sweep), "--out", s(&one), "--jobs", "1"], &[]).status.success());
    assert!(dce(&["sweep", "--scenario", s(&sweep), "--out", s(&eight), "--jobs", "8"], &[]).status.success());
    assert_eq!(fs::read(&one).unwrap(), fs::read(&eight).unwrap());
    let text = fs::read_to_string(one).unwrap();
    assert_eq!(text.lines().count(), 1 + 9 * 61);
}

#[test]
fn failing_points_leave_error_rows() {
    let dir = TempDir::new().unwrap();
    let sweep = write(
        &dir,
        "s.toml",
        &format!("{RESONANCE}[sweep]\naxes = [{{ path = \"resonance.kappa\", values = [0.01, -1.0, 0.02] }}]\n"),
    );
    let out = dir.path().join("o.csv");
    let o = dce(&["sweep", "--scenario", s(&sweep), "--out", s(&out)], &[]);
    assert_eq!(o.status.code(), Some(3));
    let text = fs::read_to_string(out).unwrap();
    let errors: Vec<&str> = text.lines().filter(|l| l.contains("error:")).collect();
    assert_eq!(errors.len(), 1);
    assert!(errors[0].starts_with("-1.0000000000000000e0,error:InvalidParameter"), "{}", errors[0]);
    assert_eq!(text.lines().count(), 1 + 6 + 1 + 6);
}

#[test]
fn mirror_sweep_changes_sign_between_half_and_six_tenths() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("m.csv");
    let scenario = manifest.join("scenarios/mirror_threshold_sweep.toml");
    assert!(dce(&["sweep", "--scenario", s(&scenario), "--out", s(&out), "--jobs", "2"], &[]).status.success());
    let text = fs::read_to_string(out).unwrap();
    let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    let net_col = header.iter().position(|&c| c == "net").unwrap();
    let nets: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').nth(net_col).unwrap().parse().unwrap()).collect();
    assert_eq!(nets.len(), 6);
    assert!(nets[..5].iter().all(|&x| x > 0.0));
    assert!(nets[5] < 0.0);
}

#[test]
fn estimate_defaults_to_reference_inputs() {
    let o = dce(&["estimate"], &[]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let rate = text.lines().find(|l| l.starts_with("fabry_perot,rate,")).unwrap();
    let v: f64 = rate.split(',').nth(2).unwrap().parse().unwrap();
    assert!((v / 2e6 - 1.0).abs() < 1e-9);
    let dir = TempDir::new().unwrap();
    let wrong = write(&dir, "r.toml", RESONANCE);
    assert_eq!(dce(&["estimate", "--scenario", s(&wrong)], &[]).status.code(), Some(1));
}

#[test]
fn shipped_scenarios_parse_and_validate() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let mut seen = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "toml") {
            let text = fs::read_to_string(&path).unwrap();
            let scenario = dce_cli::parse_scenario(&text).unwrap();
            // a sweep base is completed by its axes
            if scenario.sweep.is_none() {
                dce_cli::prepare(&scenario).unwrap();
            }
            seen += 1;
        }
    }
    assert!(seen >= 8);
}
