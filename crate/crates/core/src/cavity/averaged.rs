//! Slowly varying amplitude approximation of the wall-driven mode system.
//!
//! Writing each mode as `b_n e^{-iω_n t}` and averaging over the fast
//! oscillations leaves a constant-coefficient linear system for the slow
//! amplitudes. Only terms that are exactly resonant with the drive survive:
//! the parametric term where 2ω_n = ω_drive, and intermode terms where
//! |ω_n − ω_m| or ω_n + ω_m equals ω_drive.

use nalgebra::DMatrix;

use super::evolve::{ModeSystem, PhotonRecord};
use super::geometry::BoundaryTrajectory;
use crate::error::{Error, Result};

const RESONANCE_TOL: f64 = 1e-9;

fn resonant(x: f64, target: f64) -> bool {
    (x - target).abs() <= RESONANCE_TOL * target
}

/// Generators (A_x, A_y) of the real and imaginary slow amplitudes for
/// L = L₀[1 + a sin(ω_drive t)].
fn generators(system: &ModeSystem, amplitude: f64, omega_drive: f64) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = system.n_modes();
    let w = &system.base_omegas;
    let mut ax = DMatrix::zeros(n, n);
    let mut ay = DMatrix::zeros(n, n);
    for i in 0..n {
        if resonant(2.0 * w[i], omega_drive) {
            let p = 0.5 * amplitude * w[i];
            ax[(i, i)] -= p;
            ay[(i, i)] += p;
        }
        for j in 0..n {
            let m = system.coupling.get(i, j);
            if i == j || m == 0.0 {
                continue;
            }
            let ratio = (w[i] / w[j]).sqrt();
            let scale = 0.25 * amplitude * omega_drive * m;
            if resonant((w[i] - w[j]).abs(), omega_drive) {
                let c = scale * (ratio + 1.0 / ratio);
                ax[(i, j)] += c;
                ay[(i, j)] += c;
            }
            if resonant(w[i] + w[j], omega_drive) {
                let c = scale * (ratio - 1.0 / ratio);
                ax[(i, j)] += c;
                ay[(i, j)] -= c;
            }
        }
    }
    (ax, ay)
}

/// Photon record of the averaged system for a harmonic wall motion.
pub fn evolve_averaged(
    system: &ModeSystem,
    trajectory: &BoundaryTrajectory,
    times: &[f64],
) -> Result<PhotonRecord> {
    let BoundaryTrajectory::Harmonic { amplitude, omega_drive, .. } = *trajectory else {
        return Err(Error::invalid("trajectory", "averaged evolution needs a harmonic wall motion"));
    };
    if times.iter().any(|&t| !(t.is_finite() && t >= 0.0)) {
        return Err(Error::invalid("times", "must be finite and >= 0"));
    }
    let (ax, ay) = generators(system, amplitude, omega_drive);
    let mut record = PhotonRecord::default();
    for &t in times {
        let x = (&ax * t).exp();
        let y = (&ay * t).exp();
        // b(t) = ½(X+Y) b(0) + ½(X−Y) b†(0)
        let v = (x - y) * 0.5;
        let modes: Vec<f64> = (0..system.n_modes()).map(|i| v.row(i).norm_squared()).collect();
        let total = modes.iter().sum();
        let energy = modes
            .iter()
            .zip(&system.base_omegas)
            .map(|(nn, w)| nn * w / system.base_omegas[0])
            .sum();
        record.times.push(t);
        record.per_mode.push(modes);
        record.total.push(total);
        record.energy.push(energy);
    }
    Ok(record)
}
