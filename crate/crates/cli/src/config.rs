//! Scenario files.
//!
//! A scenario is a TOML document with a top-level `kind`, an optional
//! `seed`, `tolerance` and `[grid]`, and one parameter table named after the
//! kind. Sweep files add a `[sweep]` table. See `scenarios/SCHEMA.md`.

use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Oscillator,
    Resonance,
    Cavity1d,
    Mirror,
    Stats,
    Estimate,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub kind: Kind,
    #[serde(default)]
    pub seed: u64,
    pub tolerance: Option<f64>,
    pub grid: Option<Grid>,
    pub oscillator: Option<OscillatorParams>,
    pub resonance: Option<ResonanceParams>,
    pub cavity1d: Option<CavityParams>,
    pub mirror: Option<MirrorParams>,
    pub stats: Option<StatsParams>,
    pub estimate: Option<EstimateParams>,
    pub sweep: Option<SweepSection>,
}

/// Output times: either an explicit list or `count` evenly spaced points
/// from `start` to `stop`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub times: Option<Vec<f64>>,
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub count: Option<usize>,
}

impl Grid {
    pub fn times(&self) -> CliResult<Vec<f64>> {
        let times = match (&self.times, self.start, self.stop, self.count) {
            (Some(t), None, None, None) => t.clone(),
            (None, start, Some(stop), Some(count)) => {
                let start = start.unwrap_or(0.0);
                match count {
                    0 => Vec::new(),
                    1 => vec![stop],
                    _ => (0..count).map(|k| start + (stop - start) * k as f64 / (count - 1) as f64).collect(),
                }
            }
            _ => return Err(CliError::parse("grid: give either `times` or `stop` and `count` (with optional `start`)")),
        };
        if times.is_empty() {
            return Err(CliError::parse("grid: empty time grid"));
        }
        if times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
            return Err(CliError::parse("grid: times must be finite and >= 0"));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CliError::parse("grid: times must be strictly ascending"));
        }
        Ok(times)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileSpec {
    Constant { omega: f64 },
    SuddenJump { omega_i: f64, omega_f: f64, t_jump: f64 },
    SmoothRamp { omega_i: f64, omega_f: f64, t_center: f64, width: f64 },
    Harmonic {
        omega0: f64,
        kappa: f64,
        omega_mod: Option<f64>,
        #[serde(default)]
        phase: f64,
        window: Option<[f64; 2]>,
    },
    Tabulated { times: Vec<f64>, values: Vec<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum OscillatorOutput {
    #[default]
    Bogoliubov,
    Trajectory,
}

/// Initial occupation: a bare factor G, or a temperature with the SI mode
/// frequency.
#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ThermalSpec {
    pub g: Option<f64>,
    pub temperature: Option<f64>,
    pub omega_si: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OscillatorParams {
    pub profile: ProfileSpec,
    #[serde(default)]
    pub output: OscillatorOutput,
    /// Start of the trajectory output.
    #[serde(default)]
    pub t_start: f64,
    #[serde(default)]
    pub thermal: ThermalSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResonanceParams {
    pub omega0: f64,
    pub kappa: f64,
    /// Quality factor; lossless when absent.
    pub q: Option<f64>,
    #[serde(default)]
    pub thermal: ThermalSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CavityModel {
    #[default]
    Chain,
    TwoMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CavityMethod {
    #[default]
    Direct,
    Averaged,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Drive {
    /// L = L₀[1 + 2κ sin(2ω₁t)]
    #[default]
    Resonant,
    /// L = L₀ / [1 + 2κ cos(2ω₁t)]
    ReciprocalCosine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Sampling {
    #[default]
    Grid,
    /// Whole wall periods, `grid.count` of them spread up to the last grid time.
    Stroboscopic,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CavityParams {
    #[serde(default)]
    pub model: CavityModel,
    #[serde(default = "one")]
    pub omega1: f64,
    pub kappa: f64,
    pub n_modes: Option<usize>,
    #[serde(default)]
    pub drive: Drive,
    #[serde(default)]
    pub method: CavityMethod,
    #[serde(default)]
    pub sampling: Sampling,
    /// Number of leading modes written as separate columns.
    pub report_modes: Option<usize>,
    /// Intermode coupling of the two-mode model.
    pub coupling_strength: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum MirrorAnalysis {
    /// ν and Λ at the given A0 and period.
    #[default]
    Gain,
    /// Largest net gain over the detuning phase.
    Optimal,
    /// Critical ω₀T_r over `theta_range`.
    Threshold,
    /// Critical A0 over `a0_range` and the small-A0 power laws.
    CriticalEnergy,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PeriodSpec {
    Named(String),
    Value(f64),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MirrorParams {
    #[serde(default)]
    pub analysis: MirrorAnalysis,
    #[serde(default = "default_chi")]
    pub chi_m: f64,
    #[serde(default = "one")]
    pub omega0: f64,
    /// Recombination time; alternatively `theta` = ω₀T_r.
    pub t_r: Option<f64>,
    pub theta: Option<f64>,
    pub a0: Option<f64>,
    #[serde(default = "default_pulses")]
    pub n_pulses: u32,
    #[serde(default = "one")]
    pub g_f: f64,
    #[serde(default = "one")]
    pub g_w: f64,
    /// "half" (π/ω₀), "recombined" (default) or a number.
    pub period: Option<PeriodSpec>,
    pub theta_range: Option<[f64; 2]>,
    pub a0_range: Option<[f64; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistributionSpec {
    Dce,
    Thermal,
    Squeezed,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StatsParams {
    pub distribution: DistributionSpec,
    pub n_mean: f64,
    /// Largest m written; defaults to 5N.
    pub m_max: Option<u64>,
    /// Seeded draws summarized in an `empirical` column.
    #[serde(default)]
    pub samples: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum EstimateWhich {
    #[default]
    All,
    RadiationPressure,
    Piezo,
    FabryPerot,
    Mir,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadiationPressureParams {
    #[serde(default = "default_intensity")]
    pub intensity: f64,
    #[serde(default = "default_density")]
    pub density: f64,
    #[serde(default = "default_thickness")]
    pub thickness: f64,
    #[serde(default = "default_cm")]
    pub wavelength: f64,
    #[serde(default = "default_cm")]
    pub length: f64,
    #[serde(default = "one")]
    pub xi: f64,
}

impl Default for RadiationPressureParams {
    fn default() -> Self {
        toml::from_str("").expect("all fields have defaults")
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PiezoParams {
    #[serde(default = "default_sound")]
    pub sound_speed: f64,
    #[serde(default = "default_strain")]
    pub max_strain: f64,
    #[serde(default = "default_optical_length")]
    pub length: f64,
    #[serde(default = "one")]
    pub xi: f64,
}

impl Default for PiezoParams {
    fn default() -> Self {
        toml::from_str("").expect("all fields have defaults")
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FabryPerotParams {
    #[serde(default = "default_finesse")]
    pub finesse: f64,
    #[serde(default = "default_pump")]
    pub pump_omega: f64,
    #[serde(default = "default_beta")]
    pub beta: f64,
}

impl Default for FabryPerotParams {
    fn default() -> Self {
        toml::from_str("").expect("all fields have defaults")
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MirParams {
    #[serde(default = "default_nu")]
    pub nu: f64,
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    #[serde(default = "default_mir_pulses")]
    pub n_pulses: u32,
    #[serde(default = "one")]
    pub g_f: f64,
    #[serde(default = "one")]
    pub g_w: f64,
}

impl Default for MirParams {
    fn default() -> Self {
        toml::from_str("").expect("all fields have defaults")
    }
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct EstimateParams {
    #[serde(default)]
    pub which: EstimateWhich,
    #[serde(default)]
    pub radiation_pressure: RadiationPressureParams,
    #[serde(default)]
    pub piezo: PiezoParams,
    #[serde(default)]
    pub fabry_perot: FabryPerotParams,
    #[serde(default)]
    pub mir: MirParams,
}

/// One sweep axis: a dotted path into the scenario and its values, given
/// either as a list or as `count` evenly spaced numbers.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub path: String,
    pub values: Option<Vec<toml::Value>>,
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub count: Option<usize>,
}

impl Axis {
    pub fn points(&self) -> CliResult<Vec<toml::Value>> {
        let values = match (&self.values, self.start, self.stop, self.count) {
            (Some(v), None, None, None) => v.clone(),
            (None, Some(a), Some(b), Some(n)) => match n {
                0 => Vec::new(),
                1 => vec![toml::Value::Float(a)],
                _ => (0..n).map(|k| toml::Value::Float(a + (b - a) * k as f64 / (n - 1) as f64)).collect(),
            },
            _ => {
                return Err(CliError::parse(format!(
                    "sweep axis `{}`: give either `values` or `start`, `stop` and `count`",
                    self.path
                )))
            }
        };
        if values.is_empty() {
            return Err(CliError::parse(format!("sweep axis `{}`: empty value grid", self.path)));
        }
        Ok(values)
    }
}

pub const DEFAULT_MAX_POINTS: usize = 10_000;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub axes: Vec<Axis>,
    pub max_points: Option<usize>,
}

fn one() -> f64 {
    1.0
}
fn default_chi() -> f64 {
    0.1
}
fn default_pulses() -> u32 {
    50
}
fn default_intensity() -> f64 {
    3e15
}
fn default_density() -> f64 {
    3e3
}
fn default_thickness() -> f64 {
    1e-6
}
fn default_cm() -> f64 {
    1e-2
}
fn default_sound() -> f64 {
    5e3
}
fn default_strain() -> f64 {
    1e-2
}
fn default_optical_length() -> f64 {
    0.5e-6
}
fn default_finesse() -> f64 {
    1e4
}
fn default_pump() -> f64 {
    2.0 * std::f64::consts::PI * 3e14
}
fn default_beta() -> f64 {
    1e-6
}
fn default_nu() -> f64 {
    0.0771
}
fn default_lambda() -> f64 {
    0.0312
}
fn default_mir_pulses() -> u32 {
    100
}

/// Parses a scenario document.
pub fn parse_scenario(text: &str) -> CliResult<Scenario> {
    toml::from_str(text).map_err(|e| CliError::parse(format!("scenario: {e}")))
}

/// Parses a document already held as a TOML value tree.
pub fn scenario_from_value(value: toml::Value) -> CliResult<Scenario> {
    value.try_into().map_err(|e: toml::de::Error| CliError::parse(format!("scenario: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_forms() {
        let g: Grid = toml::from_str("stop = 4.0\ncount = 5").unwrap();
        assert_eq!(g.times().unwrap(), vec![0.0, 1.0, 2.0, 3.0, 4.0]);
        let g: Grid = toml::from_str("times = []").unwrap();
        assert!(matches!(g.times(), Err(CliError::Parse(_))));
        let g: Grid = toml::from_str("times = [2.0, 1.0]").unwrap();
        assert!(g.times().is_err());
        let g: Grid = toml::from_str("times = [1.0]\ncount = 3").unwrap();
        assert!(g.times().is_err());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = parse_scenario("kind = \"resonance\"\n[resonance]\nomega0 = 1.0\nkappa = 0.1\nkapa = 2.0\n").unwrap_err();
        assert!(err.to_string().contains("kapa"), "{err}");
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn profile_tables() {
        let s = parse_scenario(
            "kind = \"oscillator\"\n[oscillator.profile]\ntype = \"smooth_ramp\"\nomega_i = 1.0\nomega_f = 2.0\nt_center = 0.0\nwidth = 0.5\n",
        )
        .unwrap();
        assert!(matches!(s.oscillator.unwrap().profile, ProfileSpec::SmoothRamp { .. }));
    }

    #[test]
    fn estimate_defaults() {
        let e = EstimateParams::default();
        assert_eq!(e.radiation_pressure.intensity, 3e15);
        assert_eq!(e.fabry_perot.beta, 1e-6);
        assert_eq!(e.piezo.length, 0.5e-6);
    }
}
