//! Single-mode quantum oscillator with a time-dependent frequency.
//!
//! All dynamical properties of the mode follow from the complex classical
//! solution ε(t) of `ε̈ + ω²(t) ε = 0` that starts as the positive-frequency
//! wave `ω_i^{-1/2} e^{-iω_i t}`. Once the frequency has settled at `ω_f`,
//! the solution is a mix of `e^{∓iω_f t}` with Bogoliubov weights `ρ∓`, and
//! the mean number of created quanta follows from those weights.
//!
//! Units are natural: frequencies in an arbitrary scale (rad per time unit),
//! times in the inverse of that scale. Only [`ThermalState`] touches SI.

use num_complex::Complex64;

use crate::constants::{BOLTZMANN, HBAR};
use crate::error::{Error, Result};
use crate::numerics::{Dopri5, MonotoneCubic};

/// Relative frequency deviation tolerated inside a Bogoliubov fit window.
pub const STATIONARITY_TOL: f64 = 1e-9;

/// Number of periods used for the default fit window.
pub const DEFAULT_FIT_PERIODS: f64 = 5.0;

const SAMPLES_PER_PERIOD: f64 = 32.0;

/// Anything that can report a positive mode frequency as a function of time.
pub trait FrequencySource {
    fn omega(&self, t: f64) -> f64;

    /// Times where ω(t) or its derivatives jump; integration restarts there.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }

    /// `Some(ω)` when the frequency is exactly constant on `[a, b]`.
    fn constant_on(&self, _a: f64, _b: f64) -> Option<f64> {
        None
    }
}

/// Time-dependent mode frequency ω(t).
#[derive(Debug, Clone, PartialEq)]
pub enum FrequencyProfile {
    Constant { omega: f64 },
    /// ω_i before `t_jump`, ω_f from `t_jump` on.
    SuddenJump { omega_i: f64, omega_f: f64, t_jump: f64 },
    /// ω₀[1 + 2κ cos(ω_mod t + phase)], optionally only inside `window`
    /// and ω₀ outside it.
    HarmonicModulation {
        omega0: f64,
        kappa: f64,
        omega_mod: f64,
        phase: f64,
        window: Option<(f64, f64)>,
    },
    /// (ω_i+ω_f)/2 + (ω_f−ω_i)/2 · tanh((t − t_center)/width).
    SmoothRamp { omega_i: f64, omega_f: f64, t_center: f64, width: f64 },
    /// Monotone cubic through the table, clamped outside it.
    Tabulated(MonotoneCubic),
}

fn positive(field: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(field, format!("must be finite and > 0, got {v}")))
    }
}

impl FrequencyProfile {
    pub fn constant(omega: f64) -> Result<Self> {
        let p = FrequencyProfile::Constant { omega };
        p.validate()?;
        Ok(p)
    }

    pub fn sudden_jump(omega_i: f64, omega_f: f64, t_jump: f64) -> Result<Self> {
        let p = FrequencyProfile::SuddenJump { omega_i, omega_f, t_jump };
        p.validate()?;
        Ok(p)
    }

    /// Resonant modulation at twice the carrier, phase zero, never switched off.
    pub fn harmonic(omega0: f64, kappa: f64) -> Result<Self> {
        Self::harmonic_with(omega0, kappa, 2.0 * omega0, 0.0, None)
    }

    pub fn harmonic_with(
        omega0: f64,
        kappa: f64,
        omega_mod: f64,
        phase: f64,
        window: Option<(f64, f64)>,
    ) -> Result<Self> {
        let p = FrequencyProfile::HarmonicModulation { omega0, kappa, omega_mod, phase, window };
        p.validate()?;
        Ok(p)
    }

    pub fn smooth_ramp(omega_i: f64, omega_f: f64, t_center: f64, width: f64) -> Result<Self> {
        let p = FrequencyProfile::SmoothRamp { omega_i, omega_f, t_center, width };
        p.validate()?;
        Ok(p)
    }

    pub fn tabulated(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let p = FrequencyProfile::Tabulated(MonotoneCubic::new(times, values)?);
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FrequencyProfile::Constant { omega } => positive("omega", *omega),
            FrequencyProfile::SuddenJump { omega_i, omega_f, t_jump } => {
                positive("omega_i", *omega_i)?;
                positive("omega_f", *omega_f)?;
                if !t_jump.is_finite() {
                    return Err(Error::invalid("t_jump", "must be finite"));
                }
                Ok(())
            }
            FrequencyProfile::HarmonicModulation { omega0, kappa, omega_mod, phase, window } => {
                positive("omega0", *omega0)?;
                if !(kappa.is_finite() && (2.0 * kappa).abs() < 1.0) {
                    return Err(Error::invalid("kappa", format!("|2κ| must be < 1, got κ = {kappa}")));
                }
                if !(omega_mod.is_finite() && *omega_mod >= 0.0) {
                    return Err(Error::invalid("omega_mod", "must be finite and >= 0"));
                }
                if !phase.is_finite() {
                    return Err(Error::invalid("phase", "must be finite"));
                }
                if let Some((a, b)) = window {
                    if !(a.is_finite() && b.is_finite() && b > a) {
                        return Err(Error::invalid("window", "needs finite start < end"));
                    }
                }
                Ok(())
            }
            FrequencyProfile::SmoothRamp { omega_i, omega_f, t_center, width } => {
                positive("omega_i", *omega_i)?;
                positive("omega_f", *omega_f)?;
                positive("width", *width)?;
                if !t_center.is_finite() {
                    return Err(Error::invalid("t_center", "must be finite"));
                }
                Ok(())
            }
            FrequencyProfile::Tabulated(table) => {
                if table.ys().iter().any(|&w| !(w.is_finite() && w > 0.0)) {
                    return Err(Error::invalid("values", "all tabulated frequencies must be > 0"));
                }
                Ok(())
            }
        }
    }

    /// Frequency long before any change.
    pub fn initial_omega(&self) -> f64 {
        match self {
            FrequencyProfile::Constant { omega } => *omega,
            FrequencyProfile::SuddenJump { omega_i, .. } => *omega_i,
            FrequencyProfile::HarmonicModulation { omega0, .. } => *omega0,
            FrequencyProfile::SmoothRamp { omega_i, .. } => *omega_i,
            FrequencyProfile::Tabulated(t) => t.ys()[0],
        }
    }

    /// Frequency long after every change.
    pub fn final_omega(&self) -> f64 {
        match self {
            FrequencyProfile::Constant { omega } => *omega,
            FrequencyProfile::SuddenJump { omega_f, .. } => *omega_f,
            FrequencyProfile::HarmonicModulation { omega0, .. } => *omega0,
            FrequencyProfile::SmoothRamp { omega_f, .. } => *omega_f,
            FrequencyProfile::Tabulated(t) => *t.ys().last().expect("non-empty table"),
        }
    }

    /// Interval outside which the frequency is constant (to double precision
    /// for the tanh ramp). `None` for a modulation that never stops.
    pub fn transition_span(&self) -> Option<(f64, f64)> {
        match self {
            FrequencyProfile::Constant { .. } => Some((0.0, 0.0)),
            FrequencyProfile::SuddenJump { t_jump, .. } => Some((*t_jump, *t_jump)),
            FrequencyProfile::HarmonicModulation { window, kappa, .. } => {
                if *kappa == 0.0 {
                    Some((0.0, 0.0))
                } else {
                    *window
                }
            }
            FrequencyProfile::SmoothRamp { t_center, width, .. } => {
                Some((t_center - 20.0 * width, t_center + 20.0 * width))
            }
            FrequencyProfile::Tabulated(t) => Some((t.xs()[0], *t.xs().last().expect("non-empty"))),
        }
    }

    /// True when ω(t) never changes direction.
    pub fn is_monotone(&self) -> bool {
        match self {
            FrequencyProfile::Constant { .. }
            | FrequencyProfile::SuddenJump { .. }
            | FrequencyProfile::SmoothRamp { .. } => true,
            FrequencyProfile::HarmonicModulation { kappa, .. } => *kappa == 0.0,
            FrequencyProfile::Tabulated(t) => {
                let ys = t.ys();
                ys.windows(2).all(|w| w[1] >= w[0]) || ys.windows(2).all(|w| w[1] <= w[0])
            }
        }
    }
}

impl FrequencySource for FrequencyProfile {
    fn omega(&self, t: f64) -> f64 {
        match self {
            FrequencyProfile::Constant { omega } => *omega,
            FrequencyProfile::SuddenJump { omega_i, omega_f, t_jump } => {
                if t < *t_jump {
                    *omega_i
                } else {
                    *omega_f
                }
            }
            FrequencyProfile::HarmonicModulation { omega0, kappa, omega_mod, phase, window } => {
                if let Some((a, b)) = window {
                    if t < *a || t > *b {
                        return *omega0;
                    }
                }
                omega0 * (1.0 + 2.0 * kappa * (omega_mod * t + phase).cos())
            }
            FrequencyProfile::SmoothRamp { omega_i, omega_f, t_center, width } => {
                0.5 * (omega_i + omega_f) + 0.5 * (omega_f - omega_i) * ((t - t_center) / width).tanh()
            }
            FrequencyProfile::Tabulated(table) => table.eval(t),
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        match self {
            FrequencyProfile::SuddenJump { t_jump, .. } => vec![*t_jump],
            FrequencyProfile::HarmonicModulation { window: Some((a, b)), .. } => vec![*a, *b],
            FrequencyProfile::Tabulated(t) => vec![t.xs()[0], *t.xs().last().expect("non-empty")],
            _ => Vec::new(),
        }
    }

    fn constant_on(&self, a: f64, b: f64) -> Option<f64> {
        match self {
            FrequencyProfile::Constant { omega } => Some(*omega),
            FrequencyProfile::SuddenJump { omega_i, omega_f, t_jump } => {
                if b <= *t_jump {
                    Some(*omega_i)
                } else if a >= *t_jump {
                    Some(*omega_f)
                } else {
                    None
                }
            }
            FrequencyProfile::HarmonicModulation { omega0, kappa, window, .. } => {
                if *kappa == 0.0 {
                    return Some(*omega0);
                }
                match window {
                    Some((s, e)) if b <= *s || a >= *e => Some(*omega0),
                    _ => None,
                }
            }
            FrequencyProfile::SmoothRamp { .. } => None,
            FrequencyProfile::Tabulated(t) => {
                let first = t.xs()[0];
                let last = *t.xs().last().expect("non-empty");
                if b <= first {
                    Some(t.ys()[0])
                } else if a >= last {
                    Some(*t.ys().last().expect("non-empty"))
                } else {
                    None
                }
            }
        }
    }
}

/// Sampled complex classical solution ε(t), ε̇(t).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ComplexTrajectory {
    pub times: Vec<f64>,
    pub epsilon: Vec<Complex64>,
    pub epsilon_dot: Vec<Complex64>,
    /// ω(t) at each sample; used to check fit-window stationarity.
    pub omega: Vec<f64>,
}

impl ComplexTrajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Im(ε ε̇*) at sample `i`; equals 1 for an exact solution.
    pub fn wronskian(&self, i: usize) -> f64 {
        (self.epsilon[i] * self.epsilon_dot[i].conj()).im
    }

    pub fn max_wronskian_drift(&self) -> f64 {
        (0..self.len()).map(|i| (self.wronskian(i) - 1.0).abs()).fold(0.0, f64::max)
    }

    /// Index of the sample recorded exactly at `t`, if any.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        self.times.iter().position(|&s| s == t)
    }

    fn push(&mut self, t: f64, eps: Complex64, eps_dot: Complex64, omega: f64) {
        self.times.push(t);
        self.epsilon.push(eps);
        self.epsilon_dot.push(eps_dot);
        self.omega.push(omega);
    }
}

/// Extra controls for [`integrate_classical_with`].
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrationOptions {
    pub tol: f64,
    /// Times that must appear exactly in the output.
    pub sample_times: Vec<f64>,
}

impl IntegrationOptions {
    pub fn new(tol: f64) -> Self {
        Self { tol, sample_times: Vec::new() }
    }
}

/// Integrates the classical mode equation from the positive-frequency
/// initial condition at `t_start`.
pub fn integrate_classical<S: FrequencySource + ?Sized>(
    profile: &S,
    t_start: f64,
    t_end: f64,
    tol: f64,
) -> Result<ComplexTrajectory> {
    integrate_classical_with(profile, t_start, t_end, &IntegrationOptions::new(tol))
}

pub fn integrate_classical_with<S: FrequencySource + ?Sized>(
    profile: &S,
    t_start: f64,
    t_end: f64,
    options: &IntegrationOptions,
) -> Result<ComplexTrajectory> {
    let tol = options.tol;
    if !(t_start.is_finite() && t_end.is_finite() && t_end > t_start) {
        return Err(Error::invalid("t_end", "must be finite and greater than t_start"));
    }
    if !(tol > 1e-14 && tol < 1e-3) {
        return Err(Error::invalid("tol", format!("must lie in (1e-14, 1e-3), got {tol}")));
    }
    let omega_i = profile.omega(t_start);
    if !(omega_i > 0.0) {
        return Err(Error::NonPositiveFrequency { t: t_start, omega: omega_i });
    }

    // tighten the internal tolerance until the Wronskian drift is within 10·tol
    let mut inner = tol / 10.0;
    let mut last_drift = f64::INFINITY;
    for _ in 0..4 {
        let traj = integrate_once(profile, t_start, t_end, omega_i, inner.max(1e-15), options)?;
        last_drift = traj.max_wronskian_drift();
        if last_drift <= 10.0 * tol {
            return Ok(traj);
        }
        if inner <= 1e-15 {
            break;
        }
        inner /= 10.0;
    }
    log::warn!("Wronskian drift {last_drift:e} exceeds 10·tol = {:e}", 10.0 * tol);
    Err(Error::ToleranceNotMet { t: t_end, step: 0.0 })
}

fn integrate_once<S: FrequencySource + ?Sized>(
    profile: &S,
    t_start: f64,
    t_end: f64,
    omega_i: f64,
    rtol: f64,
    options: &IntegrationOptions,
) -> Result<ComplexTrajectory> {
    let mut edges: Vec<f64> = profile
        .breakpoints()
        .into_iter()
        .filter(|&b| b > t_start && b < t_end)
        .collect();
    edges.insert(0, t_start);
    edges.push(t_end);
    edges.sort_by(f64::total_cmp);
    edges.dedup();

    let mut samples: Vec<f64> = options
        .sample_times
        .iter()
        .copied()
        .filter(|&s| s >= t_start && s <= t_end)
        .collect();
    samples.sort_by(f64::total_cmp);
    samples.dedup();

    let mut traj = ComplexTrajectory::default();
    let phase = Complex64::new(0.0, -omega_i * t_start).exp();
    let mut eps = phase / omega_i.sqrt();
    let mut eps_dot = Complex64::new(0.0, -omega_i) * eps;
    traj.push(t_start, eps, eps_dot, omega_i);

    let scale = omega_i.sqrt();
    let solver = Dopri5::new(rtol, rtol);
    for seg in edges.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        let stops: Vec<f64> = samples.iter().copied().filter(|&s| s > a && s < b).collect();
        if let Some(w) = profile.constant_on(a, b) {
            if !(w > 0.0) {
                return Err(Error::NonPositiveFrequency { t: a, omega: w });
            }
            let dt = 2.0 * std::f64::consts::PI / w / SAMPLES_PER_PERIOD;
            let count = ((b - a) / dt).ceil() as usize;
            let mut times: Vec<f64> = (1..count).map(|k| a + k as f64 * (b - a) / count as f64).collect();
            times.extend(stops.iter().copied());
            times.push(b);
            times.sort_by(f64::total_cmp);
            times.dedup();
            let (e0, d0) = (eps, eps_dot);
            for &t in &times {
                let s = t - a;
                let (sn, cs) = (w * s).sin_cos();
                let e = e0 * cs + d0 * (sn / w);
                let d = -e0 * (w * sn) + d0 * cs;
                traj.push(t, e, d, w);
            }
            eps = *traj.epsilon.last().expect("sampled");
            eps_dot = *traj.epsilon_dot.last().expect("sampled");
        } else {
            // u = ε√ω_i and v = ε̇/√ω_i keep both halves of the state O(1)
            let mut y = [
                eps.re * scale,
                eps.im * scale,
                eps_dot.re / scale,
                eps_dot.im / scale,
            ];
            let mut fail = None;
            solver.integrate(
                |t, y, dy| {
                    let w = profile.omega(t);
                    if !(w > 0.0) {
                        return Err(Error::NonPositiveFrequency { t, omega: w });
                    }
                    let r = w * w / omega_i;
                    dy[0] = omega_i * y[2];
                    dy[1] = omega_i * y[3];
                    dy[2] = -r * y[0];
                    dy[3] = -r * y[1];
                    Ok(())
                },
                a,
                &mut y,
                b,
                &stops,
                |t, y, _| {
                    let w = profile.omega(t);
                    if !(w > 0.0) && fail.is_none() {
                        fail = Some(Error::NonPositiveFrequency { t, omega: w });
                    }
                    traj.push(
                        t,
                        Complex64::new(y[0], y[1]) / scale,
                        Complex64::new(y[2], y[3]) * scale,
                        w,
                    );
                },
            )?;
            if let Some(e) = fail {
                return Err(e);
            }
            eps = Complex64::new(y[0], y[1]) / scale;
            eps_dot = Complex64::new(y[2], y[3]) * scale;
        }
    }
    Ok(traj)
}

/// Bogoliubov weights of the asymptotic solution
/// `ε = ω_f^{-1/2}[ρ₋ e^{-iω_f t} + ρ₊ e^{iω_f t}]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovPair {
    pub rho_minus: Complex64,
    pub rho_plus: Complex64,
}

impl BogoliubovPair {
    pub fn new(rho_minus: Complex64, rho_plus: Complex64) -> Self {
        Self { rho_minus, rho_plus }
    }

    /// Weights of a single sample `(ε, ε̇)` at time `t`, assuming ω = ω_f there.
    pub fn from_sample(t: f64, eps: Complex64, eps_dot: Complex64, omega_f: f64) -> Self {
        let half_root = 0.5 * omega_f.sqrt();
        let i_over = Complex64::new(0.0, 1.0 / omega_f);
        let rho_minus = half_root * (eps + i_over * eps_dot) * Complex64::new(0.0, omega_f * t).exp();
        let rho_plus = half_root * (eps - i_over * eps_dot) * Complex64::new(0.0, -omega_f * t).exp();
        Self { rho_minus, rho_plus }
    }

    /// |ρ₋|² − |ρ₊|² − 1, zero for an exact solution.
    pub fn normalization_defect(&self) -> f64 {
        self.rho_minus.norm_sqr() - self.rho_plus.norm_sqr() - 1.0
    }

    /// Effective reflection coefficient R = |ρ₊/ρ₋|².
    pub fn reflection(&self) -> f64 {
        self.rho_plus.norm_sqr() / self.rho_minus.norm_sqr()
    }

    /// Effective transmission coefficient T = |ρ₋|⁻².
    pub fn transmission(&self) -> f64 {
        1.0 / self.rho_minus.norm_sqr()
    }
}

/// Fitted pair together with the RMS scatter of the per-sample estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovFit {
    pub pair: BogoliubovPair,
    /// RMS deviation of per-sample estimates, relative to |ρ₋|.
    pub residual: f64,
    pub samples: usize,
}

/// Least-squares projection of the trajectory tail onto `e^{∓iω_f t}`.
///
/// With rows for ε and ε̇/ω_f the two basis columns are orthogonal at every
/// sample, so the least-squares solution is the mean of the per-sample
/// exact solutions.
pub fn extract_bogoliubov(
    traj: &ComplexTrajectory,
    omega_f: f64,
    window: Option<f64>,
) -> Result<BogoliubovFit> {
    if !(omega_f.is_finite() && omega_f > 0.0) {
        return Err(Error::IllConditionedFit(format!("omega_f must be > 0, got {omega_f}")));
    }
    let Some(&t_last) = traj.times.last() else {
        return Err(Error::IllConditionedFit("empty trajectory".into()));
    };
    let window = window.unwrap_or(DEFAULT_FIT_PERIODS * 2.0 * std::f64::consts::PI / omega_f);
    let start = traj.times.partition_point(|&t| t < t_last - window);
    let idx: Vec<usize> = (start..traj.len()).collect();
    if idx.len() < 4 {
        return Err(Error::IllConditionedFit(format!(
            "only {} samples inside the fit window",
            idx.len()
        )));
    }
    let deviation = idx
        .iter()
        .map(|&i| ((traj.omega[i] - omega_f) / omega_f).abs())
        .fold(0.0, f64::max);
    if deviation > STATIONARITY_TOL {
        return Err(Error::WindowNotStationary { deviation });
    }
    let estimates: Vec<BogoliubovPair> = idx
        .iter()
        .map(|&i| BogoliubovPair::from_sample(traj.times[i], traj.epsilon[i], traj.epsilon_dot[i], omega_f))
        .collect();
    let n = estimates.len() as f64;
    let rho_minus = estimates.iter().map(|e| e.rho_minus).sum::<Complex64>() / n;
    let rho_plus = estimates.iter().map(|e| e.rho_plus).sum::<Complex64>() / n;
    let scatter = estimates
        .iter()
        .map(|e| (e.rho_minus - rho_minus).norm_sqr() + (e.rho_plus - rho_plus).norm_sqr())
        .sum::<f64>()
        / n;
    let residual = scatter.sqrt() / rho_minus.norm();
    if !residual.is_finite() {
        return Err(Error::IllConditionedFit("non-finite weights".into()));
    }
    Ok(BogoliubovFit { pair: BogoliubovPair { rho_minus, rho_plus }, residual, samples: idx.len() })
}

/// Integrates across the whole transition of `profile` and fits ρ± on the
/// stationary tail.
pub fn bogoliubov_for_profile(profile: &FrequencyProfile, tol: f64) -> Result<BogoliubovFit> {
    profile.validate()?;
    let (a, b) = profile.transition_span().ok_or_else(|| {
        Error::invalid("profile", "modulation never stops; no stationary tail to fit")
    })?;
    let period_i = 2.0 * std::f64::consts::PI / profile.initial_omega();
    let period_f = 2.0 * std::f64::consts::PI / profile.final_omega();
    let t_start = a - period_i;
    let t_end = b + (DEFAULT_FIT_PERIODS + 1.0) * period_f;
    let traj = integrate_classical(profile, t_start, t_end, tol)?;
    extract_bogoliubov(&traj, profile.final_omega(), None)
}

/// Initial thermal occupation of the mode, through G = coth(ħω_i / 2k_BΘ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalState {
    /// Temperature in kelvin (NaN when built from a bare factor).
    pub temperature: f64,
    /// Reference frequency in rad/s (SI).
    pub omega_i: f64,
    pub g: f64,
}

impl ThermalState {
    pub fn vacuum() -> Self {
        Self { temperature: 0.0, omega_i: f64::NAN, g: 1.0 }
    }

    pub fn new(temperature: f64, omega_i: f64) -> Result<Self> {
        if !(temperature.is_finite() && temperature >= 0.0) {
            return Err(Error::invalid("temperature", "must be finite and >= 0"));
        }
        positive("omega_i", omega_i)?;
        let g = if temperature == 0.0 {
            1.0
        } else {
            let x = HBAR * omega_i / (2.0 * BOLTZMANN * temperature);
            1.0 / x.tanh()
        };
        Ok(Self { temperature, omega_i, g })
    }

    pub fn with_factor(g: f64) -> Result<Self> {
        if !(g.is_finite() && g >= 1.0) {
            return Err(Error::invalid("g", format!("thermal factor must be >= 1, got {g}")));
        }
        Ok(Self { temperature: f64::NAN, omega_i: f64::NAN, g })
    }
}

/// Mean number of created quanta, N = G·R/T.
///
/// N counts quanta relative to the initial occupation: a profile with
/// R = 0 yields zero even for a thermal initial state.
pub fn photon_number(pair: &BogoliubovPair, thermal: &ThermalState) -> f64 {
    thermal.g * pair.reflection() / pair.transmission()
}

/// The same quantity evaluated from raw values of ε, ε̇ once ω = ω_f.
pub fn photon_number_raw(
    eps: Complex64,
    eps_dot: Complex64,
    omega_f: f64,
    thermal: &ThermalState,
) -> f64 {
    thermal.g * ((eps_dot.norm_sqr() + omega_f * omega_f * eps.norm_sqr()) / (4.0 * omega_f) - 0.5)
}

/// Reflection of an instantaneous jump, `(ω_i − ω_f)² / (ω_i + ω_f)²`.
pub fn fresnel_bound(omega_i: f64, omega_f: f64) -> Result<f64> {
    for (t, w) in [(0.0, omega_i), (1.0, omega_f)] {
        if !(w > 0.0) {
            return Err(Error::NonPositiveFrequency { t, omega: w });
        }
    }
    Ok(((omega_i - omega_f) / (omega_i + omega_f)).powi(2))
}
