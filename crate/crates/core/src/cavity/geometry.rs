use crate::error::{Error, Result};
use crate::numerics::MonotoneCubic;

/// One-dimensional ideal cavity with Dirichlet walls at x = 0 and x = L.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityGeometry1D {
    /// Rest length L₀.
    pub length: f64,
    pub c: f64,
    pub n_modes: usize,
}

impl CavityGeometry1D {
    pub fn new(length: f64, c: f64, n_modes: usize) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::invalid("length", "must be finite and > 0"));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::invalid("c", "must be finite and > 0"));
        }
        if n_modes == 0 {
            return Err(Error::invalid("n_modes", "must be at least 1"));
        }
        Ok(Self { length, c, n_modes })
    }

    /// Geometry whose fundamental frequency is `omega1`.
    pub fn with_fundamental(omega1: f64, n_modes: usize) -> Result<Self> {
        Self::new(std::f64::consts::PI / omega1, 1.0, n_modes)
    }

    /// ω_n = cπn/L₀ for mode number `n` (starting at 1).
    pub fn omega(&self, n: usize) -> f64 {
        self.c * std::f64::consts::PI * n as f64 / self.length
    }

    pub fn omegas(&self) -> Vec<f64> {
        (1..=self.n_modes).map(|n| self.omega(n)).collect()
    }
}

/// Cavity length as a function of time.
pub trait LengthProfile {
    fn length(&self, t: f64) -> f64;
    /// λ(t) = L̇/L.
    fn log_rate(&self, t: f64) -> f64;
    /// Period of L(t) if it is periodic.
    fn period(&self) -> Option<f64>;
}

/// Motion of the moving wall.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryTrajectory {
    /// L₀[1 + a sin(ω_drive t)].
    Harmonic { l0: f64, amplitude: f64, omega_drive: f64 },
    /// L₀ / [1 + 2κ cos(ω_drive t)], which makes every mode frequency an
    /// exact cosine modulation ω_n[1 + 2κ cos(ω_drive t)].
    ReciprocalCosine { l0: f64, kappa: f64, omega_drive: f64 },
    /// Monotone cubic through (t, L) samples, clamped outside the table.
    Tabulated(MonotoneCubic),
}

impl BoundaryTrajectory {
    pub fn harmonic(l0: f64, amplitude: f64, omega_drive: f64) -> Result<Self> {
        let b = BoundaryTrajectory::Harmonic { l0, amplitude, omega_drive };
        b.validate()?;
        Ok(b)
    }

    /// Resonant drive at twice the fundamental of `geometry` with κ = a/2.
    pub fn resonant(geometry: &CavityGeometry1D, kappa: f64) -> Result<Self> {
        Self::harmonic(geometry.length, 2.0 * kappa, 2.0 * geometry.omega(1))
    }

    pub fn reciprocal_cosine(l0: f64, kappa: f64, omega_drive: f64) -> Result<Self> {
        let b = BoundaryTrajectory::ReciprocalCosine { l0, kappa, omega_drive };
        b.validate()?;
        Ok(b)
    }

    pub fn tabulated(times: Vec<f64>, lengths: Vec<f64>) -> Result<Self> {
        let b = BoundaryTrajectory::Tabulated(MonotoneCubic::new(times, lengths)?);
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            BoundaryTrajectory::Harmonic { l0, amplitude, omega_drive } => {
                if !(l0.is_finite() && *l0 > 0.0) {
                    return Err(Error::invalid("l0", "must be finite and > 0"));
                }
                if !(amplitude.is_finite() && amplitude.abs() < 1.0) {
                    return Err(Error::invalid("amplitude", "|a| must be < 1"));
                }
                if amplitude.abs() > 0.1 {
                    log::warn!("wall amplitude {amplitude} is not small");
                }
                if !(omega_drive.is_finite() && *omega_drive >= 0.0) {
                    return Err(Error::invalid("omega_drive", "must be finite and >= 0"));
                }
                Ok(())
            }
            BoundaryTrajectory::ReciprocalCosine { l0, kappa, omega_drive } => {
                if !(l0.is_finite() && *l0 > 0.0) {
                    return Err(Error::invalid("l0", "must be finite and > 0"));
                }
                if !(kappa.is_finite() && (2.0 * kappa).abs() < 1.0) {
                    return Err(Error::invalid("kappa", "|2κ| must be < 1"));
                }
                if !(omega_drive.is_finite() && *omega_drive >= 0.0) {
                    return Err(Error::invalid("omega_drive", "must be finite and >= 0"));
                }
                Ok(())
            }
            BoundaryTrajectory::Tabulated(t) => {
                if t.ys().iter().any(|&l| !(l.is_finite() && l > 0.0)) {
                    return Err(Error::invalid("lengths", "all tabulated lengths must be > 0"));
                }
                Ok(())
            }
        }
    }

    /// Effective modulation depth κ of the mode frequencies.
    pub fn kappa(&self) -> f64 {
        match self {
            BoundaryTrajectory::Harmonic { amplitude, .. } => 0.5 * amplitude,
            BoundaryTrajectory::ReciprocalCosine { kappa, .. } => *kappa,
            BoundaryTrajectory::Tabulated(_) => f64::NAN,
        }
    }
}

impl LengthProfile for BoundaryTrajectory {
    fn length(&self, t: f64) -> f64 {
        match self {
            BoundaryTrajectory::Harmonic { l0, amplitude, omega_drive } => {
                l0 * (1.0 + amplitude * (omega_drive * t).sin())
            }
            BoundaryTrajectory::ReciprocalCosine { l0, kappa, omega_drive } => {
                l0 / (1.0 + 2.0 * kappa * (omega_drive * t).cos())
            }
            BoundaryTrajectory::Tabulated(table) => table.eval(t),
        }
    }

    fn log_rate(&self, t: f64) -> f64 {
        match self {
            BoundaryTrajectory::Harmonic { amplitude, omega_drive, .. } => {
                let (s, c) = (omega_drive * t).sin_cos();
                amplitude * omega_drive * c / (1.0 + amplitude * s)
            }
            BoundaryTrajectory::ReciprocalCosine { kappa, omega_drive, .. } => {
                let (s, c) = (omega_drive * t).sin_cos();
                2.0 * kappa * omega_drive * s / (1.0 + 2.0 * kappa * c)
            }
            BoundaryTrajectory::Tabulated(table) => table.derivative(t) / table.eval(t),
        }
    }

    fn period(&self) -> Option<f64> {
        match self {
            BoundaryTrajectory::Harmonic { omega_drive, amplitude, .. }
            | BoundaryTrajectory::ReciprocalCosine { omega_drive, kappa: amplitude, .. } => {
                if *omega_drive > 0.0 && *amplitude != 0.0 {
                    Some(2.0 * std::f64::consts::PI / omega_drive)
                } else {
                    None
                }
            }
            BoundaryTrajectory::Tabulated(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectrum_is_equidistant() {
        let g = CavityGeometry1D::new(2.0, 3.0, 6).unwrap();
        let w = g.omegas();
        for pair in w.windows(2) {
            assert!((pair[1] - pair[0] - w[0]).abs() < 1e-12);
        }
        assert!((g.omega(1) - 1.5 * std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn log_rates_match_difference_quotients() {
        let trajectories = [
            BoundaryTrajectory::harmonic(1.0, 0.05, 2.0).unwrap(),
            BoundaryTrajectory::reciprocal_cosine(1.0, 0.05, 2.0).unwrap(),
            BoundaryTrajectory::tabulated(vec![0.0, 1.0, 2.0], vec![1.0, 1.1, 1.15]).unwrap(),
        ];
        for b in &trajectories {
            for t in [0.2, 0.7, 1.3] {
                let h = 1e-6;
                let fd = (b.length(t + h).ln() - b.length(t - h).ln()) / (2.0 * h);
                assert!((b.log_rate(t) - fd).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn reciprocal_cosine_modulates_frequencies_exactly() {
        let b = BoundaryTrajectory::reciprocal_cosine(1.0, 0.1, 2.0).unwrap();
        let t = 0.37;
        assert!((1.0 / b.length(t) - (1.0 + 0.2 * (2.0 * t).cos())).abs() < 1e-15);
    }

    #[test]
    fn rejects_invalid() {
        assert!(BoundaryTrajectory::harmonic(1.0, 1.5, 2.0).is_err());
        assert!(BoundaryTrajectory::harmonic(-1.0, 0.1, 2.0).is_err());
        assert!(BoundaryTrajectory::tabulated(vec![0.0, 1.0], vec![1.0, 0.0]).is_err());
        assert!(CavityGeometry1D::new(1.0, 1.0, 0).is_err());
    }
}
