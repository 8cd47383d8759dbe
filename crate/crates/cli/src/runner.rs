//! Validation of scenarios into execution plans, and their execution.

use dce_core::cavity::{
    check_truncation, coupling_matrix_1d, evolve_averaged, evolve_modes_at, even_mode_suppression,
    stroboscopic_times, two_mode_coupled_growth, BoundaryTrajectory, CavityGeometry1D, CouplingMatrix,
    ModeSystem, PhotonRecord,
};
use dce_core::feasibility::{
    fabry_perot_flux, mir_expectation, piezo_limits, radiation_pressure_drive, FabryPerotInput,
    MirrorDriveInput, PiezoInput, Quantity,
};
use dce_core::mirror::{
    critical_energy_behavior, gain_loss, optimal_net_gain, photon_growth, recombination_threshold_scan,
    GainLossPair, GrowthRegime, MirrorResponse, PulseTrain,
};
use dce_core::oscillator::{
    bogoliubov_for_profile, fresnel_bound, integrate_classical_with, photon_number, photon_number_raw,
    FrequencyProfile, FrequencySource, IntegrationOptions, ThermalState,
};
use dce_core::resonance::{dissipative_photon_number, lossless_photon_number, Regime, ResonantDriveSpec};
use dce_core::statistics::{f_dce, f_thermal, PhotonDistribution};

use crate::config::*;
use crate::error::{CliError, CliResult};
use crate::table::{Cell, Table};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const TOLERANCE_ENV: &str = "DCE_TOLERANCE";

/// Tolerance from the command-line flag, else the scenario file, else the
/// environment, else [`DEFAULT_TOLERANCE`].
pub fn resolve_tolerance(flag: Option<f64>, file: Option<f64>) -> CliResult<f64> {
    let env = match std::env::var(TOLERANCE_ENV) {
        Ok(s) => Some(
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::parse(format!("{TOLERANCE_ENV}: `{s}` is not a number")))?,
        ),
        Err(_) => None,
    };
    let tol = flag.or(file).or(env).unwrap_or(DEFAULT_TOLERANCE);
    if !(tol > 1e-14 && tol < 1e-3) {
        return Err(CliError::invalid("tolerance", format!("must lie in (1e-14, 1e-3), got {tol}")));
    }
    Ok(tol)
}

#[derive(Debug, Clone)]
pub enum Plan {
    Bogoliubov { profile: FrequencyProfile, thermal: ThermalState },
    Trajectory { profile: FrequencyProfile, thermal: ThermalState, t_start: f64, times: Vec<f64> },
    Resonance { spec: ResonantDriveSpec, times: Vec<f64> },
    Chain(ChainPlan),
    TwoMode { omega1: f64, kappa: f64, coupling_strength: f64, t_end: f64 },
    Mirror(MirrorPlan),
    Stats { distribution: DistributionSpec, n_mean: f64, m_max: u64, samples: u64, seed: u64 },
    Estimate(Box<EstimateParams>),
}

#[derive(Debug, Clone)]
pub struct ChainPlan {
    geometry: CavityGeometry1D,
    trajectory: BoundaryTrajectory,
    method: CavityMethod,
    times: Vec<f64>,
    report_modes: usize,
}

#[derive(Debug, Clone)]
pub enum MirrorPlan {
    Gain { mirror: MirrorResponse, train: PulseTrain, optimize: bool },
    Threshold { chi_m: f64, a0: f64, omega0: f64, range: (f64, f64) },
    CriticalEnergy { mirror: MirrorResponse, train: PulseTrain, range: (f64, f64) },
}

fn missing(section: &str) -> CliError {
    CliError::parse(format!("missing [{section}] table"))
}

fn grid_times(scenario: &Scenario) -> CliResult<Vec<f64>> {
    scenario.grid.as_ref().ok_or_else(|| missing("grid"))?.times()
}

fn thermal_state(spec: &ThermalSpec) -> CliResult<ThermalState> {
    Ok(match (spec.g, spec.temperature, spec.omega_si) {
        (None, None, None) => ThermalState::vacuum(),
        (Some(g), None, None) => ThermalState::with_factor(g)?,
        (None, Some(t), Some(w)) => ThermalState::new(t, w)?,
        _ => return Err(CliError::parse("thermal: give either `g` or both `temperature` and `omega_si`")),
    })
}

fn profile(spec: &ProfileSpec) -> CliResult<FrequencyProfile> {
    Ok(match spec.clone() {
        ProfileSpec::Constant { omega } => FrequencyProfile::constant(omega)?,
        ProfileSpec::SuddenJump { omega_i, omega_f, t_jump } => FrequencyProfile::sudden_jump(omega_i, omega_f, t_jump)?,
        ProfileSpec::SmoothRamp { omega_i, omega_f, t_center, width } => {
            FrequencyProfile::smooth_ramp(omega_i, omega_f, t_center, width)?
        }
        ProfileSpec::Harmonic { omega0, kappa, omega_mod, phase, window } => FrequencyProfile::harmonic_with(
            omega0,
            kappa,
            omega_mod.unwrap_or(2.0 * omega0),
            phase,
            window.map(|[a, b]| (a, b)),
        )?,
        ProfileSpec::Tabulated { times, values } => FrequencyProfile::tabulated(times, values)?,
    })
}

fn positive(field: &str, v: f64) -> CliResult<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CliError::invalid(field, format!("must be finite and > 0, got {v}")))
    }
}

fn range(field: &str, r: [f64; 2]) -> CliResult<(f64, f64)> {
    if r[0] > 0.0 && r[1] > r[0] && r[1].is_finite() {
        Ok((r[0], r[1]))
    } else {
        Err(CliError::invalid(field, "needs 0 < lower < upper"))
    }
}

/// Checks every parameter of `scenario` and builds the objects it needs.
pub fn prepare(scenario: &Scenario) -> CliResult<Plan> {
    match scenario.kind {
        Kind::Oscillator => {
            let p = scenario.oscillator.as_ref().ok_or_else(|| missing("oscillator"))?;
            let profile = profile(&p.profile)?;
            let thermal = thermal_state(&p.thermal)?;
            match p.output {
                OscillatorOutput::Bogoliubov => {
                    if profile.transition_span().is_none() {
                        return Err(CliError::invalid(
                            "oscillator.profile",
                            "needs a stationary final state; give a `window` for harmonic modulation",
                        ));
                    }
                    Ok(Plan::Bogoliubov { profile, thermal })
                }
                OscillatorOutput::Trajectory => {
                    let times = grid_times(scenario)?;
                    if !(p.t_start.is_finite() && p.t_start < times[0]) {
                        return Err(CliError::invalid("oscillator.t_start", "must lie before the first grid time"));
                    }
                    Ok(Plan::Trajectory { profile, thermal, t_start: p.t_start, times })
                }
            }
        }
        Kind::Resonance => {
            let p = scenario.resonance.as_ref().ok_or_else(|| missing("resonance"))?;
            let g = thermal_state(&p.thermal)?.g;
            let spec = ResonantDriveSpec::new(p.omega0, p.kappa, p.q.unwrap_or(f64::INFINITY), g)?;
            Ok(Plan::Resonance { spec, times: grid_times(scenario)? })
        }
        Kind::Cavity1d => {
            let p = scenario.cavity1d.as_ref().ok_or_else(|| missing("cavity1d"))?;
            positive("cavity1d.omega1", p.omega1)?;
            if !(p.kappa.is_finite() && p.kappa >= 0.0 && p.kappa < 0.25) {
                return Err(CliError::invalid("cavity1d.kappa", "must lie in [0, 0.25)"));
            }
            let times = grid_times(scenario)?;
            match p.model {
                CavityModel::TwoMode => {
                    let coupling_strength = p.coupling_strength.unwrap_or(1.0);
                    positive("cavity1d.coupling_strength", coupling_strength)?;
                    let t_end = *times.last().expect("grid is non-empty");
                    if p.omega1 * p.kappa * t_end < 1.0 {
                        return Err(CliError::invalid("grid", "two-mode fit needs omega1·kappa·t >= 1"));
                    }
                    Ok(Plan::TwoMode { omega1: p.omega1, kappa: p.kappa, coupling_strength, t_end })
                }
                CavityModel::Chain => {
                    let n = p.n_modes.ok_or_else(|| CliError::parse("cavity1d: `n_modes` is required"))?;
                    if !(1..=512).contains(&n) {
                        return Err(CliError::invalid("cavity1d.n_modes", "must lie in 1..=512"));
                    }
                    let geometry = CavityGeometry1D::with_fundamental(p.omega1, n)?;
                    let trajectory = match p.drive {
                        Drive::Resonant => BoundaryTrajectory::resonant(&geometry, p.kappa)?,
                        Drive::ReciprocalCosine => {
                            BoundaryTrajectory::reciprocal_cosine(geometry.length, p.kappa, 2.0 * p.omega1)?
                        }
                    };
                    if p.method == CavityMethod::Averaged && p.drive != Drive::Resonant {
                        return Err(CliError::invalid("cavity1d.method", "averaged evolution needs the resonant drive"));
                    }
                    let times = match p.sampling {
                        Sampling::Grid => times,
                        Sampling::Stroboscopic => {
                            if p.kappa == 0.0 {
                                return Err(CliError::invalid("cavity1d.sampling", "a static wall has no period"));
                            }
                            stroboscopic_times(&trajectory, *times.last().expect("non-empty"), times.len())
                        }
                    };
                    let report_modes = p.report_modes.unwrap_or(n.min(4));
                    if report_modes > n {
                        return Err(CliError::invalid("cavity1d.report_modes", "exceeds n_modes"));
                    }
                    Ok(Plan::Chain(ChainPlan { geometry, trajectory, method: p.method, times, report_modes }))
                }
            }
        }
        Kind::Mirror => prepare_mirror(scenario.mirror.as_ref().ok_or_else(|| missing("mirror"))?),
        Kind::Stats => {
            let p = scenario.stats.as_ref().ok_or_else(|| missing("stats"))?;
            positive("stats.n_mean", p.n_mean)?;
            if p.n_mean > 1e6 {
                return Err(CliError::invalid("stats.n_mean", "must not exceed 1e6"));
            }
            let m_max = p.m_max.unwrap_or((5.0 * p.n_mean).ceil() as u64);
            if m_max > 10_000_000 {
                return Err(CliError::invalid("stats.m_max", "must not exceed 1e7"));
            }
            if p.samples > 100_000_000 {
                return Err(CliError::invalid("stats.samples", "must not exceed 1e8"));
            }
            Ok(Plan::Stats { distribution: p.distribution, n_mean: p.n_mean, m_max, samples: p.samples, seed: scenario.seed })
        }
        Kind::Estimate => {
            let p = scenario.estimate.clone().unwrap_or_default();
            validate_estimate(&p)?;
            Ok(Plan::Estimate(Box::new(p)))
        }
    }
}

fn prepare_mirror(p: &MirrorParams) -> CliResult<Plan> {
    positive("mirror.omega0", p.omega0)?;
    let t_r = match (p.t_r, p.theta) {
        (Some(t), None) => Some(t),
        (None, Some(theta)) => Some(theta / p.omega0),
        (None, None) => None,
        (Some(_), Some(_)) => return Err(CliError::parse("mirror: give only one of `t_r` and `theta`")),
    };
    let need_t_r = || t_r.ok_or_else(|| CliError::parse("mirror: `t_r` or `theta` is required"));
    let need_a0 = || p.a0.ok_or_else(|| CliError::parse("mirror: `a0` is required"));
    let train_for = |mirror: &MirrorResponse| -> CliResult<PulseTrain> {
        let train = match &p.period {
            None => PulseTrain::fully_recombined(p.n_pulses, p.omega0, mirror)?,
            Some(PeriodSpec::Named(s)) if s == "recombined" => PulseTrain::fully_recombined(p.n_pulses, p.omega0, mirror)?,
            Some(PeriodSpec::Named(s)) if s == "half" => PulseTrain::half_period(p.n_pulses, p.omega0)?,
            Some(PeriodSpec::Named(s)) => {
                return Err(CliError::invalid("mirror.period", format!("unknown period `{s}`")))
            }
            Some(PeriodSpec::Value(t)) => PulseTrain::new(p.n_pulses, *t, p.omega0, 1.0, 1.0)?,
        };
        Ok(train.with_thermal(p.g_f, p.g_w)?)
    };
    let plan = match p.analysis {
        MirrorAnalysis::Gain | MirrorAnalysis::Optimal => {
            let mirror = MirrorResponse::new(p.chi_m, need_t_r()?, need_a0()?)?;
            let train = train_for(&mirror)?;
            MirrorPlan::Gain { mirror, train, optimize: p.analysis == MirrorAnalysis::Optimal }
        }
        MirrorAnalysis::Threshold => {
            let a0 = need_a0()?;
            MirrorResponse::new(p.chi_m, 1.0, a0)?;
            if a0 < 100.0 {
                return Err(CliError::invalid("mirror.a0", "the threshold scan needs A0 >= 100"));
            }
            let range = range("mirror.theta_range", p.theta_range.unwrap_or([0.2, 1.0]))?;
            MirrorPlan::Threshold { chi_m: p.chi_m, a0, omega0: p.omega0, range }
        }
        MirrorAnalysis::CriticalEnergy => {
            let range = range("mirror.a0_range", p.a0_range.unwrap_or([1e-3, 1e3]))?;
            let mirror = MirrorResponse::new(p.chi_m, need_t_r()?, range.0)?;
            let train = train_for(&mirror.with_a0(range.1))?;
            MirrorPlan::CriticalEnergy { mirror, train, range }
        }
    };
    Ok(Plan::Mirror(plan))
}

fn drive_input(p: &RadiationPressureParams) -> MirrorDriveInput {
    MirrorDriveInput {
        intensity: p.intensity,
        density: p.density,
        thickness: p.thickness,
        wavelength: p.wavelength,
        length: p.length,
        xi: p.xi,
    }
}

fn piezo_input(p: &PiezoParams) -> PiezoInput {
    PiezoInput { sound_speed: p.sound_speed, max_strain: p.max_strain, length: p.length, xi: p.xi }
}

fn fabry_perot_input(p: &FabryPerotParams) -> FabryPerotInput {
    FabryPerotInput { finesse: p.finesse, pump_omega: p.pump_omega, beta: p.beta }
}

fn mir_inputs(p: &MirParams) -> CliResult<(PulseTrain, GainLossPair)> {
    positive("estimate.mir.nu", p.nu)?;
    positive("estimate.mir.lambda", p.lambda)?;
    let train = PulseTrain::new(p.n_pulses, std::f64::consts::PI, 1.0, p.g_f, p.g_w)?;
    Ok((train, GainLossPair { nu: p.nu, lambda: p.lambda }))
}

fn validate_estimate(p: &EstimateParams) -> CliResult<()> {
    let all = p.which == EstimateWhich::All;
    if all || p.which == EstimateWhich::RadiationPressure {
        drive_input(&p.radiation_pressure).validate()?;
    }
    if all || p.which == EstimateWhich::Piezo {
        piezo_input(&p.piezo).validate()?;
    }
    if all || p.which == EstimateWhich::FabryPerot {
        fabry_perot_input(&p.fabry_perot).validate()?;
    }
    if all || p.which == EstimateWhich::Mir {
        mir_inputs(&p.mir)?;
    }
    Ok(())
}

/// Runs a validated plan.
pub fn execute(plan: &Plan, tol: f64) -> CliResult<Table> {
    match plan {
        Plan::Bogoliubov { profile, thermal } => {
            let fit = bogoliubov_for_profile(profile, tol)?;
            let bound = if profile.is_monotone() {
                Some(fresnel_bound(profile.initial_omega(), profile.final_omega())?)
            } else {
                None
            };
            let mut t = Table::new(&[
                "omega_i",
                "omega_f",
                "rho_minus_abs",
                "rho_plus_abs",
                "reflection",
                "transmission",
                "n_photons",
                "normalization_defect",
                "fresnel_bound",
                "fit_residual",
            ]);
            t.push(vec![
                profile.initial_omega().into(),
                profile.final_omega().into(),
                fit.pair.rho_minus.norm().into(),
                fit.pair.rho_plus.norm().into(),
                fit.pair.reflection().into(),
                fit.pair.transmission().into(),
                photon_number(&fit.pair, thermal).into(),
                fit.pair.normalization_defect().into(),
                bound.into(),
                fit.residual.into(),
            ]);
            Ok(t)
        }
        Plan::Trajectory { profile, thermal, t_start, times } => {
            let options = IntegrationOptions { tol, sample_times: times.clone() };
            let traj = integrate_classical_with(profile, *t_start, *times.last().expect("non-empty"), &options)?;
            let mut t = Table::new(&[
                "t",
                "omega",
                "epsilon_re",
                "epsilon_im",
                "epsilon_dot_re",
                "epsilon_dot_im",
                "wronskian",
                "n_instantaneous",
            ]);
            for &time in times {
                let i = traj
                    .index_of(time)
                    .ok_or(CliError::Numerical(dce_core::Error::ToleranceNotMet { t: time, step: 0.0 }))?;
                let omega = profile.omega(time);
                t.push(vec![
                    time.into(),
                    omega.into(),
                    traj.epsilon[i].re.into(),
                    traj.epsilon[i].im.into(),
                    traj.epsilon_dot[i].re.into(),
                    traj.epsilon_dot[i].im.into(),
                    traj.wronskian(i).into(),
                    photon_number_raw(traj.epsilon[i], traj.epsilon_dot[i], omega, thermal).into(),
                ]);
            }
            Ok(t)
        }
        Plan::Resonance { spec, times } => {
            let mut t = Table::new(&["t", "N", "regime", "zeta"]);
            for &time in times {
                if spec.q.is_infinite() {
                    t.push(vec![time.into(), lossless_photon_number(spec, time).into(), Regime::Lossless.as_str().into(), 1.0.into()]);
                } else {
                    let r = dissipative_photon_number(spec, time)?;
                    t.push(vec![time.into(), r.n.value().into(), r.regime.as_str().into(), r.zeta.into()]);
                }
            }
            Ok(t)
        }
        Plan::Chain(p) => execute_chain(p, tol),
        Plan::TwoMode { omega1, kappa, coupling_strength, t_end } => {
            let g = two_mode_coupled_growth(*omega1, *kappa, *coupling_strength, *t_end, tol)?;
            let mut t = Table::new(&["t_end", "uncoupled_rate", "coupled_rate", "rate_a", "rate_b", "ratio"]);
            t.push(vec![
                (*t_end).into(),
                g.uncoupled_rate.into(),
                g.coupled_rate.into(),
                g.rate_a.into(),
                g.rate_b.into(),
                g.ratio().into(),
            ]);
            Ok(t)
        }
        Plan::Mirror(p) => execute_mirror(p, tol),
        Plan::Stats { distribution, n_mean, m_max, samples, seed } => {
            let dist = match distribution {
                DistributionSpec::Dce => PhotonDistribution::dce(*n_mean)?,
                DistributionSpec::Thermal => PhotonDistribution::thermal(*n_mean)?,
                DistributionSpec::Squeezed => PhotonDistribution::squeezed(*n_mean)?,
            };
            let mut counts = vec![0u64; *m_max as usize + 1];
            if *samples > 0 {
                for m in dist.sampler(*seed).take(*samples as usize) {
                    if let Some(c) = counts.get_mut(m as usize) {
                        *c += 1;
                    }
                }
            }
            let mut columns = vec!["m", "probability", "asymptotic"];
            if *samples > 0 {
                columns.push("empirical");
            }
            let mut t = Table::new(&columns);
            for m in 0..=*m_max {
                let asymptotic = match distribution {
                    DistributionSpec::Thermal => Some(f_thermal(*n_mean, m as f64)),
                    _ if m == 0 => None,
                    _ => Some(f_dce(*n_mean, m as f64)),
                };
                let mut row = vec![Cell::Int(m as i64), dist.probability(m).into(), asymptotic.into()];
                if *samples > 0 {
                    row.push((counts[m as usize] as f64 / *samples as f64).into());
                }
                t.push(row);
            }
            Ok(t)
        }
        Plan::Estimate(p) => execute_estimate(p),
    }
}

fn parity_share(record: &PhotonRecord, i: usize) -> CliResult<f64> {
    Ok(even_mode_suppression(record, i, false)?.odd_share)
}

fn execute_chain(p: &ChainPlan, tol: f64) -> CliResult<Table> {
    let n = p.geometry.n_modes;
    let coupling = if n >= 2 { coupling_matrix_1d(&p.geometry)? } else { CouplingMatrix::zeros(1) };
    let record = match p.method {
        CavityMethod::Direct => {
            let evolution = evolve_modes_at(&p.geometry, &p.trajectory, &coupling, &p.times, tol)?;
            if evolution.truncation.is_some_and(|r| r.warning) {
                log::warn!("more than 1% of the photons sit in the top tenth of the modes");
            }
            evolution.record
        }
        CavityMethod::Averaged => {
            let system = ModeSystem::cavity_1d(&p.geometry, coupling)?;
            let record = evolve_averaged(&system, &p.trajectory, &p.times)?;
            if n >= 2 && check_truncation(&record)?.warning {
                log::warn!("more than 1% of the photons sit in the top tenth of the modes");
            }
            record
        }
    };
    let mut columns: Vec<String> = ["t", "n_total", "energy", "odd_share"].iter().map(|s| s.to_string()).collect();
    columns.extend((1..=p.report_modes).map(|k| format!("n_{k}")));
    let mut t = Table::new(&columns);
    for i in 0..record.len() {
        let mut row = vec![
            record.times[i].into(),
            record.total[i].into(),
            record.energy[i].into(),
            parity_share(&record, i)?.into(),
        ];
        row.extend(record.per_mode[i][..p.report_modes].iter().map(|&x| Cell::Float(x)));
        t.push(row);
    }
    Ok(t)
}

fn execute_mirror(p: &MirrorPlan, tol: f64) -> CliResult<Table> {
    match p {
        MirrorPlan::Gain { mirror, train, optimize } => {
            let (mirror, train) = if *optimize {
                let (_, s) = optimal_net_gain(mirror, train.omega0, tol)?;
                let m = mirror.with_a0(mirror.a0 * s.exp());
                let t = PulseTrain::fully_recombined(train.n_pulses, train.omega0, &m)?.with_thermal(train.g_f, train.g_w)?;
                (m, t)
            } else {
                (*mirror, *train)
            };
            let pair = gain_loss(&mirror, &train, tol)?;
            let growth = photon_growth(&train, &pair)?;
            let mut t = Table::new(&["theta", "a0", "period", "nu", "lambda", "net", "n_photons", "regime"]);
            t.push(vec![
                (train.omega0 * mirror.t_r).into(),
                mirror.a0.into(),
                train.period.into(),
                pair.nu.into(),
                pair.lambda.into(),
                pair.net().into(),
                growth.n.into(),
                match growth.regime {
                    GrowthRegime::Growing => "growing",
                    GrowthRegime::Damped => "damped",
                }
                .into(),
            ]);
            Ok(t)
        }
        MirrorPlan::Threshold { chi_m, a0, omega0, range } => {
            let theta = recombination_threshold_scan(*chi_m, *a0, *omega0, *range, tol)?;
            let mut t = Table::new(&["a0", "theta_critical"]);
            t.push(vec![(*a0).into(), theta.into()]);
            Ok(t)
        }
        MirrorPlan::CriticalEnergy { mirror, train, range } => {
            let c = critical_energy_behavior(mirror, train, *range, tol)?;
            let mut t = Table::new(&["theta", "a0_critical", "lambda_exponent", "nu_exponent"]);
            t.push(vec![
                (train.omega0 * mirror.t_r).into(),
                c.a0_critical.into(),
                c.lambda_exponent.into(),
                c.nu_exponent.into(),
            ]);
            Ok(t)
        }
    }
}

fn execute_estimate(p: &EstimateParams) -> CliResult<Table> {
    let mut t = Table::new(&["estimate", "quantity", "value", "unit"]);
    let mut push = |estimate: &str, quantity: &str, q: Quantity| {
        t.push(vec![estimate.into(), quantity.into(), q.value.into(), q.unit.symbol().into()]);
    };
    let all = p.which == EstimateWhich::All;
    if all || p.which == EstimateWhich::RadiationPressure {
        let d = radiation_pressure_drive(&drive_input(&p.radiation_pressure))?;
        push("radiation_pressure", "pressure_amplitude", d.pressure_amplitude);
        push("radiation_pressure", "delta_l", d.delta_l);
        push("radiation_pressure", "delta_omega", d.delta_omega);
        push("radiation_pressure", "required_fluence", d.required_fluence);
    }
    if all || p.which == EstimateWhich::Piezo {
        let l = piezo_limits(&piezo_input(&p.piezo))?;
        push("piezo", "v_max", l.v_max);
        push("piezo", "delta_omega", l.delta_omega);
        push("piezo", "q_min_per_length_ratio", l.q_min_per_length_ratio);
    }
    if all || p.which == EstimateWhich::FabryPerot {
        let f = fabry_perot_flux(&fabry_perot_input(&p.fabry_perot))?;
        push("fabry_perot", "rate", f.rate);
        push("fabry_perot", "n_inside", f.n_inside);
    }
    if all || p.which == EstimateWhich::Mir {
        let (train, pair) = mir_inputs(&p.mir)?;
        let e = mir_expectation(&train, &pair)?;
        push("mir", "photons", e.photons);
        t.push(vec!["mir".into(), "detectable".into(), Cell::Bool(e.detectable), "".into()]);
    }
    Ok(t)
}

/// Validates and runs `scenario`; `tolerance_flag` overrides the file.
pub fn run_scenario(scenario: &Scenario, tolerance_flag: Option<f64>) -> CliResult<Table> {
    let tol = resolve_tolerance(tolerance_flag, scenario.tolerance)?;
    let plan = prepare(scenario)?;
    execute(&plan, tol)
}
