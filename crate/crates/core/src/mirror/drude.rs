use num_complex::Complex64;

use crate::constants::{ELECTRON_MASS, ELEMENTARY_CHARGE};
use crate::error::{Error, Result};

/// Drude permittivity ε(ω) = ε_a + 4πiσ₀ / (ω(1 − iωτ)) in Gaussian units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrudeMedium {
    pub epsilon_a: f64,
    /// Static conductivity in s⁻¹.
    pub sigma0: f64,
    /// Collision time in s.
    pub tau: f64,
}

impl DrudeMedium {
    pub fn new(epsilon_a: f64, sigma0: f64, tau: f64) -> Result<Self> {
        if !(epsilon_a.is_finite() && epsilon_a > 0.0) {
            return Err(Error::invalid("epsilon_a", "must be finite and > 0"));
        }
        if !(sigma0.is_finite() && sigma0 >= 0.0) {
            return Err(Error::invalid("sigma0", "must be finite and >= 0"));
        }
        if !(tau.is_finite() && tau >= 0.0) {
            return Err(Error::invalid("tau", "must be finite and >= 0"));
        }
        Ok(Self { epsilon_a, sigma0, tau })
    }

    pub fn epsilon(&self, omega: f64) -> Result<Complex64> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::invalid("omega", "must be finite and > 0"));
        }
        let denom = Complex64::new(omega, -omega * omega * self.tau);
        Ok(self.epsilon_a + Complex64::new(0.0, 4.0 * std::f64::consts::PI * self.sigma0) / denom)
    }

    /// Carrier mobility eτ/m in m²·V⁻¹·s⁻¹ for effective mass `m_eff` in kg.
    pub fn mobility(&self, m_eff: f64) -> f64 {
        ELEMENTARY_CHARGE * self.tau / m_eff
    }
}

/// Mobility e/(mω) above which the carriers respond as free charges at ω,
/// in m²·V⁻¹·s⁻¹. `m_eff` defaults to the free electron mass.
pub fn mobility_criterion(omega: f64, m_eff: Option<f64>) -> Result<f64> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::invalid("omega", "must be finite and > 0"));
    }
    let m = m_eff.unwrap_or(ELECTRON_MASS);
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::invalid("m_eff", "must be finite and > 0"));
    }
    Ok(ELEMENTARY_CHARGE / (m * omega))
}

/// Converts a mobility from m²·V⁻¹·s⁻¹ to cm²·statV⁻¹·s⁻¹.
pub fn mobility_si_to_cgs(b: f64) -> f64 {
    // 1 statV = 299.792458 V
    b * 1e4 * 299.792_458
}
