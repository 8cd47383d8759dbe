use super::coupling::CouplingMatrix;
use super::evolve::{evolve_system, uniform_times, ModeSystem, PhotonRecord};
use super::geometry::BoundaryTrajectory;
use crate::error::{Error, Result};

/// Exponential growth rates (per unit time, of the photon number) of a
/// parametrically driven mode with and without a resonant partner mode.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeGrowth {
    /// Rate of the driven mode alone.
    pub uncoupled_rate: f64,
    /// Rate of the total photon number of the coupled pair.
    pub coupled_rate: f64,
    /// Rates of the two coupled modes separately.
    pub rate_a: f64,
    pub rate_b: f64,
    pub uncoupled: PhotonRecord,
    pub coupled: PhotonRecord,
}

impl TwoModeGrowth {
    pub fn ratio(&self) -> f64 {
        self.coupled_rate / self.uncoupled_rate
    }
}

const SAMPLES: usize = 601;

/// Least-squares slope of ln y against t over the final third of the samples.
pub fn log_linear_rate(times: &[f64], values: &[f64]) -> Result<f64> {
    let start = times.len() - times.len() / 3;
    let pts: Vec<(f64, f64)> = times[start..]
        .iter()
        .zip(&values[start..])
        .filter(|(_, &v)| v > 0.0)
        .map(|(&t, &v)| (t, v.ln()))
        .collect();
    if pts.len() < 8 {
        return Err(Error::FitWindowTooShort(format!("{} usable samples in the final third", pts.len())));
    }
    let n = pts.len() as f64;
    let mt = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mt) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mt).powi(2)).sum();
    Ok(sxy / sxx)
}

/// Mode a at ω₀ is driven at 2ω₀ through ω_n(t) = ω_n[1 + 2κ cos(2ω₀t)]; mode
/// b at 3ω₀ is coupled to it with strength `coupling_strength` by the wall
/// velocity, which makes the pair resonant through ω_b − ω_a = 2ω₀.
pub fn two_mode_coupled_growth(
    omega0: f64,
    kappa: f64,
    coupling_strength: f64,
    t_end: f64,
    tol: f64,
) -> Result<TwoModeGrowth> {
    if !(omega0.is_finite() && omega0 > 0.0) {
        return Err(Error::invalid("omega0", "must be finite and > 0"));
    }
    if !(kappa.is_finite() && kappa > 0.0 && kappa < 0.5) {
        return Err(Error::invalid("kappa", "must lie in (0, 0.5)"));
    }
    if !coupling_strength.is_finite() {
        return Err(Error::invalid("coupling_strength", "must be finite"));
    }
    if !(t_end.is_finite() && omega0 * kappa * t_end >= 1.0) {
        return Err(Error::FitWindowTooShort(format!(
            "omega0·kappa·t_end = {} is below 1",
            omega0 * kappa * t_end
        )));
    }
    let wall = BoundaryTrajectory::reciprocal_cosine(1.0, kappa, 2.0 * omega0)?;
    let omegas = vec![omega0, 3.0 * omega0];
    let times = uniform_times(t_end, SAMPLES);

    let free = ModeSystem::new(omegas.clone(), CouplingMatrix::two_mode(0.0), 1.0)?;
    let uncoupled = evolve_system(&free, &wall, &times, tol)?.record;
    let linked = ModeSystem::new(omegas, CouplingMatrix::two_mode(coupling_strength), 1.0)?;
    let coupled = evolve_system(&linked, &wall, &times, tol)?.record;

    let column = |r: &PhotonRecord, k: usize| -> Vec<f64> { r.per_mode.iter().map(|row| row[k]).collect() };
    let uncoupled_rate = log_linear_rate(&times, &column(&uncoupled, 0))?;
    let coupled_rate = log_linear_rate(&times, &coupled.total)?;
    let rate_a = log_linear_rate(&times, &column(&coupled, 0))?;
    let rate_b = if coupling_strength == 0.0 { 0.0 } else { log_linear_rate(&times, &column(&coupled, 1))? };
    Ok(TwoModeGrowth { uncoupled_rate, coupled_rate, rate_a, rate_b, uncoupled, coupled })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_linear_rate_of_exponential() {
        let t: Vec<f64> = (0..30).map(|k| k as f64).collect();
        let y: Vec<f64> = t.iter().map(|&x| 3.0 * (0.25 * x).exp()).collect();
        assert!((log_linear_rate(&t, &y).unwrap() - 0.25).abs() < 1e-12);
        assert!(log_linear_rate(&t[..6], &y[..6]).is_err());
    }

    #[test]
    fn no_coupling_means_equal_rates() {
        let g = two_mode_coupled_growth(1.0, 0.02, 0.0, 200.0, 1e-9).unwrap();
        assert!((g.coupled_rate - g.uncoupled_rate).abs() < 1e-3 * g.uncoupled_rate);
        assert!((g.uncoupled_rate - 0.04).abs() < 0.1 * 0.04);
    }

    #[test]
    fn short_runs_are_rejected() {
        assert!(matches!(
            two_mode_coupled_growth(1.0, 0.01, 1.0, 10.0, 1e-9),
            Err(Error::FitWindowTooShort(_))
        ));
    }
}
