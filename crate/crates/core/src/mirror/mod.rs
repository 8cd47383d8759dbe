//! Photo-excited semiconductor slab acting as a periodically created mirror.
//!
//! A laser pulse creates carriers with dimensionless density A(t) =
//! A0·e^{-t/T_r}. The mode then acquires the complex frequency shift
//! χ(t) − iγ(t) with χ = χ_m A²/(A²+1) and γ = |χ_m| A/(A²+1). Over one pulse
//! period the shift amplifies the mode by ν and damps it by Λ.

mod drude;

pub use drude::{mobility_criterion, mobility_si_to_cgs, DrudeMedium};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::integrate_adaptive;

/// Carrier density below which the slab counts as fully recombined.
pub const RECOMBINED_LEVEL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MirrorResponse {
    /// Maximal frequency shift in rad/s, with sign.
    pub chi_m: f64,
    /// Recombination time.
    pub t_r: f64,
    /// Initial excitation A0.
    pub a0: f64,
}

impl MirrorResponse {
    pub fn new(chi_m: f64, t_r: f64, a0: f64) -> Result<Self> {
        if !chi_m.is_finite() {
            return Err(Error::invalid("chi_m", "must be finite"));
        }
        if !(t_r.is_finite() && t_r > 0.0) {
            return Err(Error::invalid("t_r", "must be finite and > 0"));
        }
        if !(a0.is_finite() && a0 >= 0.0) {
            return Err(Error::invalid("a0", "must be finite and >= 0"));
        }
        Ok(Self { chi_m, t_r, a0 })
    }

    pub fn with_a0(&self, a0: f64) -> Self {
        Self { a0, ..*self }
    }

    pub fn excitation(&self, t: f64) -> f64 {
        self.a0 * (-t / self.t_r).exp()
    }

    pub fn chi(&self, t: f64) -> f64 {
        let a = self.excitation(t);
        self.chi_m * a * a / (a * a + 1.0)
    }

    pub fn gamma(&self, t: f64) -> f64 {
        let a = self.excitation(t);
        self.chi_m.abs() * a / (a * a + 1.0)
    }

    /// Time T_r ln A0 at which A = 1 and γ peaks (A0 > 1).
    pub fn peak_damping_time(&self) -> Option<f64> {
        (self.a0 > 1.0).then(|| self.t_r * self.a0.ln())
    }

    /// ∫₀ᵀ γ dt = |χ_m| T_r [arctan A0 − arctan(A0 e^{-T/T_r})].
    pub fn lambda_closed_form(&self, period: f64) -> f64 {
        self.chi_m.abs() * self.t_r * (self.a0.atan() - self.excitation(period).atan())
    }
}

/// Periodic sequence of pulses exciting the mode at ω₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseTrain {
    pub n_pulses: u32,
    pub period: f64,
    pub omega0: f64,
    /// Thermal factors of the field and of the walls.
    pub g_f: f64,
    pub g_w: f64,
}

impl PulseTrain {
    pub fn new(n_pulses: u32, period: f64, omega0: f64, g_f: f64, g_w: f64) -> Result<Self> {
        let t = Self { n_pulses, period, omega0, g_f, g_w };
        t.validate()?;
        Ok(t)
    }

    /// Period of one half-cycle of the field, π/ω₀, at zero temperature.
    pub fn half_period(n_pulses: u32, omega0: f64) -> Result<Self> {
        Self::new(n_pulses, std::f64::consts::PI / omega0, omega0, 1.0, 1.0)
    }

    /// Smallest multiple kπ/ω₀ of the half-period after which the carriers
    /// of `mirror` have decayed below [`RECOMBINED_LEVEL`].
    pub fn fully_recombined(n_pulses: u32, omega0: f64, mirror: &MirrorResponse) -> Result<Self> {
        let half = std::f64::consts::PI / omega0;
        let needed = if mirror.a0 > RECOMBINED_LEVEL { mirror.t_r * (mirror.a0 / RECOMBINED_LEVEL).ln() } else { 0.0 };
        let k = (needed / half).ceil().max(1.0);
        Self::new(n_pulses, k * half, omega0, 1.0, 1.0)
    }

    pub fn with_thermal(self, g_f: f64, g_w: f64) -> Result<Self> {
        Self::new(self.n_pulses, self.period, self.omega0, g_f, g_w)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_pulses == 0 {
            return Err(Error::invalid("n_pulses", "must be >= 1"));
        }
        if !(self.period.is_finite() && self.period > 0.0) {
            return Err(Error::invalid("period", "must be finite and > 0"));
        }
        if !(self.omega0.is_finite() && self.omega0 > 0.0) {
            return Err(Error::invalid("omega0", "must be finite and > 0"));
        }
        if !(self.g_f >= 1.0 && self.g_w >= 1.0 && self.g_f.is_finite() && self.g_w.is_finite()) {
            return Err(Error::invalid("g_f", "thermal factors must be finite and >= 1"));
        }
        Ok(())
    }
}

/// Gain ν and loss Λ accumulated over one pulse period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainLossPair {
    pub nu: f64,
    pub lambda: f64,
}

impl GainLossPair {
    pub fn net(&self) -> f64 {
        self.nu - self.lambda
    }
}

/// ν = |∫₀ᵀ χ e^{-2iω₀t} dt| and Λ = ∫₀ᵀ γ dt by adaptive quadrature.
pub fn gain_loss(mirror: &MirrorResponse, train: &PulseTrain, tol: f64) -> Result<GainLossPair> {
    train.validate()?;
    if !(tol > 0.0 && tol < 1e-2) {
        return Err(Error::invalid("tol", "must lie in (0, 1e-2)"));
    }
    if mirror.a0 == 0.0 || mirror.chi_m == 0.0 {
        return Ok(GainLossPair { nu: 0.0, lambda: 0.0 });
    }
    let t = train.period;
    let w2 = 2.0 * train.omega0;
    let scale = mirror.chi_m.abs() * mirror.t_r.min(t);
    let abs_tol = 1e-3 * tol * scale;
    let re = integrate_adaptive(|s| mirror.chi(s) * (w2 * s).cos(), 0.0, t, abs_tol, 1e-3 * tol)?;
    let im = integrate_adaptive(|s| -mirror.chi(s) * (w2 * s).sin(), 0.0, t, abs_tol, 1e-3 * tol)?;
    let lambda = integrate_adaptive(|s| mirror.gamma(s), 0.0, t, abs_tol, 1e-3 * tol)?;
    let closed = mirror.lambda_closed_form(t);
    let error = (lambda - closed).abs();
    if error > tol * closed.max(scale * 1e-3) {
        return Err(Error::QuadratureFailure { a: 0.0, b: t, error });
    }
    Ok(GainLossPair { nu: Complex64::new(re, im).norm(), lambda })
}

/// Simple closed-form estimates of ν and Λ for A0 ≫ 1:
/// Λ ≈ π|χ_m|T_r/2 and ν ≈ (|χ_m|/2ω₀)|1 − πθ e^{-2iθ ln A0}/sinh(πθ)|, θ = ω₀T_r.
pub fn approx_eq10(mirror: &MirrorResponse, train: &PulseTrain) -> Result<GainLossPair> {
    train.validate()?;
    if mirror.a0 < 10.0 {
        return Err(Error::invalid("a0", "the closed-form estimates need A0 >= 10"));
    }
    if mirror.a0 < 100.0 {
        log::warn!("A0 = {} is small for the closed-form estimates", mirror.a0);
    }
    let chi = mirror.chi_m.abs();
    let theta = train.omega0 * mirror.t_r;
    let x = std::f64::consts::PI * theta;
    let phase = Complex64::new(0.0, -2.0 * theta * mirror.a0.ln()).exp();
    let nu = chi / (2.0 * train.omega0) * (Complex64::new(1.0, 0.0) - phase * (x / x.sinh())).norm();
    Ok(GainLossPair { nu, lambda: 0.5 * std::f64::consts::PI * chi * mirror.t_r })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthRegime {
    Growing,
    Damped,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonGrowth {
    pub n: f64,
    pub prefactor: f64,
    pub regime: GrowthRegime,
}

/// N = [G_f(ν−Λ) + G_wΛ] / (4(ν−Λ)) · e^{2n(ν−Λ)} after n pulses.
pub fn photon_growth(train: &PulseTrain, pair: &GainLossPair) -> Result<PhotonGrowth> {
    train.validate()?;
    if train.n_pulses < 10 {
        log::warn!("{} pulses is few for the asymptotic growth law", train.n_pulses);
    }
    let net = pair.net();
    if net.abs() <= 1e-12 * pair.nu.max(pair.lambda).max(f64::MIN_POSITIVE) {
        return Err(Error::DegenerateBalance { net });
    }
    let prefactor = (train.g_f * net + train.g_w * pair.lambda) / (4.0 * net);
    let n = prefactor * (2.0 * train.n_pulses as f64 * net).exp();
    let regime = if net > 0.0 { GrowthRegime::Growing } else { GrowthRegime::Damped };
    Ok(PhotonGrowth { n, prefactor, regime })
}

const PHASE_GRID: usize = 48;

/// Largest net gain over the detuning phase.
///
/// The relative phase between the switching-on of the mirror and the
/// smooth recombination tail is 2ω₀T_r ln A0, so rescaling A0 by e^s with
/// s ∈ [0, π/(ω₀T_r)) sweeps it through a full turn. The period is chosen
/// long enough for the carriers to recombine completely.
pub fn optimal_net_gain(mirror: &MirrorResponse, omega0: f64, tol: f64) -> Result<(f64, f64)> {
    let theta = omega0 * mirror.t_r;
    let span = std::f64::consts::PI / theta;
    let net_at = |s: f64| -> Result<f64> {
        let m = mirror.with_a0(mirror.a0 * s.exp());
        let train = PulseTrain::fully_recombined(1, omega0, &m)?;
        Ok(gain_loss(&m, &train, tol)?.net())
    };
    let mut best = (f64::NEG_INFINITY, 0.0);
    for k in 0..PHASE_GRID {
        let s = span * k as f64 / PHASE_GRID as f64;
        let v = net_at(s)?;
        if v > best.0 {
            best = (v, s);
        }
    }
    // golden-section refinement around the best grid point
    let step = span / PHASE_GRID as f64;
    let (mut a, mut b) = (best.1 - step, best.1 + step);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (net_at(c)?, net_at(d)?);
    for _ in 0..30 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = net_at(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = net_at(d)?;
        }
    }
    let (v, s) = if fc > fd { (fc, c) } else { (fd, d) };
    Ok(if v > best.0 { (v, s) } else { best })
}

/// Critical ω₀T_r below which the phase-optimized net gain is positive.
pub fn recombination_threshold_scan(
    chi_m: f64,
    a0: f64,
    omega0: f64,
    theta_range: (f64, f64),
    tol: f64,
) -> Result<f64> {
    let (mut lo, mut hi) = theta_range;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::invalid("theta_range", "needs 0 < lower < upper"));
    }
    if a0 < 100.0 {
        return Err(Error::invalid("a0", "the threshold scan needs A0 >= 100"));
    }
    let net = |theta: f64| -> Result<f64> {
        let m = MirrorResponse::new(chi_m, theta / omega0, a0)?;
        Ok(optimal_net_gain(&m, omega0, tol)?.0)
    };
    let (f_lo, f_hi) = (net(lo)?, net(hi)?);
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSignChange);
    }
    while hi - lo > 1e-5 {
        let mid = 0.5 * (lo + hi);
        if net(mid)?.signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalEnergy {
    /// Smallest A0 with ν > Λ.
    pub a0_critical: f64,
    /// Log-log slope of Λ(A0) over A0 ∈ [0.01, 0.1].
    pub lambda_exponent: f64,
    /// Log-log slope of ν(A0) over A0 ∈ [0.01, 0.1].
    pub nu_exponent: f64,
}

fn log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Scans A0 over `a0_range` (log grid) for the onset of net gain at the
/// period of `train`, and fits the small-A0 power laws of ν and Λ.
pub fn critical_energy_behavior(
    mirror: &MirrorResponse,
    train: &PulseTrain,
    a0_range: (f64, f64),
    tol: f64,
) -> Result<CriticalEnergy> {
    let (lo, hi) = a0_range;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::invalid("a0_range", "needs 0 < lower < upper"));
    }
    let net = |a0: f64| -> Result<f64> { Ok(gain_loss(&mirror.with_a0(a0), train, tol)?.net()) };
    const GRID: usize = 121;
    let ratio = (hi / lo).ln();
    let mut previous = (lo, net(lo)?);
    if previous.1 > 0.0 {
        return Err(Error::NoSignChange);
    }
    let mut bracket = None;
    for k in 1..GRID {
        let a = lo * (ratio * k as f64 / (GRID - 1) as f64).exp();
        let v = net(a)?;
        if v > 0.0 {
            bracket = Some((previous.0, a));
            break;
        }
        previous = (a, v);
    }
    let (mut a, mut b) = bracket.ok_or(Error::NoSignChange)?;
    while b / a - 1.0 > 1e-9 {
        let mid = (a * b).sqrt();
        if net(mid)? > 0.0 {
            b = mid;
        } else {
            a = mid;
        }
    }

    let small: Vec<f64> = (0..9).map(|k| 0.01 * 10f64.powf(k as f64 / 8.0)).collect();
    let mut nus = Vec::with_capacity(small.len());
    let mut lambdas = Vec::with_capacity(small.len());
    for &a0 in &small {
        let p = gain_loss(&mirror.with_a0(a0), train, tol)?;
        nus.push(p.nu);
        lambdas.push(p.lambda);
    }
    Ok(CriticalEnergy {
        a0_critical: b,
        lambda_exponent: log_slope(&small, &lambdas),
        nu_exponent: log_slope(&small, &nus),
    })
}
