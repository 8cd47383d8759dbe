//! Resonant parametric amplification of a single mode driven at twice its
//! frequency, with and without cavity losses.

use std::fmt;

use crate::error::{Error, Result};
use crate::oscillator::{integrate_classical_with, photon_number_raw, FrequencyProfile, IntegrationOptions, ThermalState};

/// Drive parameters: ω(t) = ω₀[1 + 2κ cos(2ω₀t)] in a cavity of quality `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonantDriveSpec {
    pub omega0: f64,
    pub kappa: f64,
    /// Quality factor ω₀/(2γ); `f64::INFINITY` for a lossless cavity.
    pub q: f64,
    pub g_thermal: f64,
}

impl ResonantDriveSpec {
    pub fn new(omega0: f64, kappa: f64, q: f64, g_thermal: f64) -> Result<Self> {
        let s = Self { omega0, kappa, q, g_thermal };
        s.validate()?;
        Ok(s)
    }

    pub fn lossless(omega0: f64, kappa: f64) -> Result<Self> {
        Self::new(omega0, kappa, f64::INFINITY, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega0.is_finite() && self.omega0 > 0.0) {
            return Err(Error::invalid("omega0", "must be finite and > 0"));
        }
        if !(self.kappa.is_finite() && self.kappa >= 0.0) {
            return Err(Error::invalid("kappa", "must be finite and >= 0"));
        }
        if !(self.q > 0.0) {
            return Err(Error::invalid("q", "must be > 0 (infinity allowed)"));
        }
        if !(self.g_thermal.is_finite() && self.g_thermal >= 1.0) {
            return Err(Error::invalid("g_thermal", "must be >= 1"));
        }
        Ok(())
    }

    /// ζ = 1 − 1/(2Qκ); 1 for a lossless cavity.
    pub fn zeta(&self) -> f64 {
        if self.q.is_infinite() {
            1.0
        } else {
            1.0 - 1.0 / (2.0 * self.q * self.kappa)
        }
    }

    /// Time 1/(ω₀κ²) after which the linear theory stops being reliable.
    pub fn validity_time(&self) -> f64 {
        1.0 / (self.omega0 * self.kappa * self.kappa)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Lossless,
    AboveThreshold,
    AtThreshold,
    BelowThreshold,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Lossless => "lossless",
            Regime::AboveThreshold => "above_threshold",
            Regime::AtThreshold => "at_threshold",
            Regime::BelowThreshold => "below_threshold",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Photon number, or a marker that the mode does not grow and no closed
/// form is available.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhotonEstimate {
    Value(f64),
    Bounded,
}

impl PhotonEstimate {
    pub fn value(&self) -> Option<f64> {
        match self {
            PhotonEstimate::Value(v) => Some(*v),
            PhotonEstimate::Bounded => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthReport {
    pub n: PhotonEstimate,
    pub regime: Regime,
    pub zeta: f64,
    pub validity_time: f64,
    /// 2ω₀κζt > 1, where the exponential law is meant to apply.
    pub asymptotic_valid: bool,
    /// t < 1/(ω₀κ²).
    pub linear_valid: bool,
}

pub fn regime(spec: &ResonantDriveSpec) -> Regime {
    if spec.q.is_infinite() {
        return Regime::Lossless;
    }
    let p = 2.0 * spec.q * spec.kappa;
    if (p - 1.0).abs() <= 4.0 * f64::EPSILON {
        Regime::AtThreshold
    } else if p > 1.0 {
        Regime::AboveThreshold
    } else {
        Regime::BelowThreshold
    }
}

/// N = G·sinh²(ω₀κt).
pub fn lossless_photon_number(spec: &ResonantDriveSpec, t: f64) -> f64 {
    if spec.kappa > 0.1 {
        log::warn!("kappa = {} is not small; the resonance law is a first-order result", spec.kappa);
    }
    spec.g_thermal * (spec.omega0 * spec.kappa * t).sinh().powi(2)
}

/// N ≈ (4ζ)⁻¹ exp(2ω₀κζt) above threshold.
pub fn dissipative_photon_number(spec: &ResonantDriveSpec, t: f64) -> Result<GrowthReport> {
    spec.validate()?;
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::invalid("t", "must be finite and >= 0"));
    }
    let regime = regime(spec);
    let zeta = spec.zeta();
    let validity_time = spec.validity_time();
    let linear_valid = t < validity_time;
    if !linear_valid {
        log::warn!("t = {t} exceeds the linear validity time {validity_time}");
    }
    let (n, asymptotic_valid) = match regime {
        Regime::Lossless | Regime::AboveThreshold => {
            let rate = 2.0 * spec.omega0 * spec.kappa * zeta;
            (PhotonEstimate::Value((rate * t).exp() / (4.0 * zeta)), rate * t > 1.0)
        }
        Regime::AtThreshold | Regime::BelowThreshold => (PhotonEstimate::Bounded, false),
    };
    Ok(GrowthReport { n, regime, zeta, validity_time, asymptotic_valid, linear_valid })
}

/// The estimate sinh²(2Qκ) that a naive argument suggests for the saturated
/// photon number. It is not a valid prediction and is kept only for
/// comparison.
pub fn naive_saturation_estimate(spec: &ResonantDriveSpec) -> f64 {
    (2.0 * spec.q * spec.kappa).sinh().powi(2)
}

/// Integrates the modulated oscillator up to `t` and compares the resulting
/// photon number with G·sinh²(ω₀κt). Returns the deviation relative to
/// max(1, G·sinh²).
pub fn crosscheck_numeric(spec: &ResonantDriveSpec, t: f64, tol: f64) -> Result<f64> {
    spec.validate()?;
    if spec.q.is_finite() {
        return Err(Error::invalid("q", "numerical cross-check is lossless only"));
    }
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::invalid("t", "must be finite and > 0"));
    }
    if spec.omega0 * spec.kappa * t > 5.0 {
        return Err(Error::invalid("t", "omega0·kappa·t must not exceed 5"));
    }
    let analytic = lossless_photon_number(spec, t);
    if spec.kappa == 0.0 {
        return Ok(0.0);
    }
    let profile = FrequencyProfile::harmonic(spec.omega0, spec.kappa)?;
    let numeric = numeric_photon_number(&profile, spec.omega0, spec.g_thermal, t, tol)?;
    Ok((numeric - analytic).abs() / analytic.max(1.0))
}

/// Photon number read off the integrated trajectory at `t` as if the
/// modulation stopped there and the mode were left at ω₀.
pub fn numeric_photon_number(
    profile: &FrequencyProfile,
    omega0: f64,
    g_thermal: f64,
    t: f64,
    tol: f64,
) -> Result<f64> {
    let options = IntegrationOptions { tol, sample_times: vec![t] };
    let traj = integrate_classical_with(profile, 0.0, t, &options)?;
    let k = traj.len() - 1;
    let thermal = ThermalState::with_factor(g_thermal)?;
    Ok(photon_number_raw(traj.epsilon[k], traj.epsilon_dot[k], omega0, &thermal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn lossless_values() {
        let s = ResonantDriveSpec::lossless(1.0, 0.01).unwrap();
        assert_eq!(lossless_photon_number(&s, 0.0), 0.0);
        assert_relative_eq!(lossless_photon_number(&s, 100.0), 1.381_097_845_541_816, max_relative = 1e-12);
        assert_relative_eq!(lossless_photon_number(&s, 300.0), 100.357_818_061_227_96, max_relative = 1e-12);
    }

    #[test]
    fn dissipative_value_and_regimes() {
        let s = ResonantDriveSpec::new(1.0, 0.01, 100.0, 1.0).unwrap();
        let r = dissipative_photon_number(&s, 500.0).unwrap();
        assert_eq!(r.regime, Regime::AboveThreshold);
        assert_relative_eq!(r.zeta, 0.5, epsilon = 1e-15);
        assert!((r.n.value().unwrap() - 0.5 * 5f64.exp()).abs() < 1e-12);
        assert!(r.asymptotic_valid);

        let at = ResonantDriveSpec::new(1.0, 0.01, 50.0, 1.0).unwrap();
        let r = dissipative_photon_number(&at, 500.0).unwrap();
        assert_eq!(r.regime, Regime::AtThreshold);
        assert_eq!(r.n, PhotonEstimate::Bounded);

        let below = ResonantDriveSpec::new(1.0, 0.01, 10.0, 1.0).unwrap();
        assert_eq!(dissipative_photon_number(&below, 500.0).unwrap().regime, Regime::BelowThreshold);
    }

    #[test]
    fn infinite_q_limit() {
        let s = ResonantDriveSpec::lossless(1.0, 0.01).unwrap();
        let t = 500.0;
        let r = dissipative_photon_number(&s, t).unwrap();
        assert_eq!(r.regime, Regime::Lossless);
        let ratio = r.n.value().unwrap() / lossless_photon_number(&s, t);
        assert!((0.9..=1.1).contains(&ratio), "{ratio}");
    }

    #[test]
    fn validity_flag() {
        let s = ResonantDriveSpec::new(1.0, 0.1, 100.0, 1.0).unwrap();
        assert_relative_eq!(s.validity_time(), 100.0, max_relative = 1e-12);
        assert!(!dissipative_photon_number(&s, 150.0).unwrap().linear_valid);
        assert!(dissipative_photon_number(&s, 50.0).unwrap().linear_valid);
    }

    #[test]
    fn crosscheck_small_cases() {
        let zero = ResonantDriveSpec::lossless(1.0, 0.0).unwrap();
        assert_eq!(crosscheck_numeric(&zero, 40.0, 1e-9).unwrap(), 0.0);
        let s = ResonantDriveSpec::lossless(1.0, 0.01).unwrap();
        assert!(crosscheck_numeric(&s, 100.0, 1e-9).unwrap() <= 0.05);
        let lossy = ResonantDriveSpec::new(1.0, 0.01, 100.0, 1.0).unwrap();
        assert!(crosscheck_numeric(&lossy, 100.0, 1e-9).is_err());
        assert!(crosscheck_numeric(&s, 600.0, 1e-9).is_err());
    }

    #[test]
    fn naive_estimate_is_available() {
        let s = ResonantDriveSpec::new(1.0, 0.01, 100.0, 1.0).unwrap();
        assert_relative_eq!(naive_saturation_estimate(&s), 2f64.sinh().powi(2), max_relative = 1e-14);
    }

    proptest! {
        #[test]
        fn lossless_monotone(k in 1e-4f64..0.05, t in 0.0f64..200.0, g in 1.0f64..5.0, d in 1e-3f64..0.5) {
            let base = ResonantDriveSpec::new(1.0, k, f64::INFINITY, g).unwrap();
            let n = lossless_photon_number(&base, t);
            let more_k = ResonantDriveSpec::new(1.0, k * (1.0 + d), f64::INFINITY, g).unwrap();
            let more_g = ResonantDriveSpec::new(1.0, k, f64::INFINITY, g * (1.0 + d)).unwrap();
            prop_assert!(lossless_photon_number(&more_k, t) >= n);
            prop_assert!(lossless_photon_number(&more_g, t) >= n);
            prop_assert!(lossless_photon_number(&base, t * (1.0 + d) + 1e-3) >= n);
        }

        #[test]
        fn growth_monotone_in_q(q in 60.0f64..1e4, dq in 1.0f64..1e3) {
            let t = 2000.0;
            let a = ResonantDriveSpec::new(1.0, 0.01, q, 1.0).unwrap();
            let b = ResonantDriveSpec::new(1.0, 0.01, q + dq, 1.0).unwrap();
            let ra = dissipative_photon_number(&a, t).unwrap();
            let rb = dissipative_photon_number(&b, t).unwrap();
            prop_assume!(ra.asymptotic_valid);
            prop_assert!(rb.n.value().unwrap() >= ra.n.value().unwrap());
        }
    }
}
