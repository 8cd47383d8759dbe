use std::cell::RefCell;

use nalgebra::{DMatrix, DMatrixView, DMatrixViewMut};

use super::coupling::CouplingMatrix;
use super::geometry::{BoundaryTrajectory, CavityGeometry1D, LengthProfile};
use crate::error::{Error, Result};
use crate::numerics::Dopri5;

/// Truncated set of modes: rest frequencies, coupling and rest length.
///
/// The instantaneous frequencies are ω_n(t) = ω_n⁰·L₀/L(t).
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSystem {
    pub base_omegas: Vec<f64>,
    pub coupling: CouplingMatrix,
    pub reference_length: f64,
}

impl ModeSystem {
    pub fn new(base_omegas: Vec<f64>, coupling: CouplingMatrix, reference_length: f64) -> Result<Self> {
        if base_omegas.is_empty() {
            return Err(Error::invalid("base_omegas", "at least one mode is required"));
        }
        if base_omegas.iter().any(|&w| !(w.is_finite() && w > 0.0)) {
            return Err(Error::invalid("base_omegas", "frequencies must be finite and > 0"));
        }
        if coupling.n_modes() != base_omegas.len() {
            return Err(Error::invalid("coupling", "size differs from the number of modes"));
        }
        if !(reference_length.is_finite() && reference_length > 0.0) {
            return Err(Error::invalid("reference_length", "must be finite and > 0"));
        }
        Ok(Self { base_omegas, coupling, reference_length })
    }

    pub fn cavity_1d(geometry: &CavityGeometry1D, coupling: CouplingMatrix) -> Result<Self> {
        Self::new(geometry.omegas(), coupling, geometry.length)
    }

    pub fn n_modes(&self) -> usize {
        self.base_omegas.len()
    }
}

/// Photon numbers at sampled times.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PhotonRecord {
    pub times: Vec<f64>,
    /// `per_mode[k][n]` is N_(n+1) at `times[k]`.
    pub per_mode: Vec<Vec<f64>>,
    pub total: Vec<f64>,
    /// Σ (ω_n/ω_1) N_n, the energy in units of ħω_1.
    pub energy: Vec<f64>,
}

impl PhotonRecord {
    fn push(&mut self, t: f64, modes: Vec<f64>, base_omegas: &[f64]) {
        let total = modes.iter().sum();
        let energy = modes.iter().zip(base_omegas).map(|(n, w)| n * w / base_omegas[0]).sum();
        self.times.push(t);
        self.per_mode.push(modes);
        self.total.push(total);
        self.energy.push(energy);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Occupation of the highest modes at the final sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationReport {
    /// Share of N_tot held by the highest 10 % of modes.
    pub top_share: f64,
    /// Share of N_tot held by the highest mode alone.
    pub highest_share: f64,
    /// `top_share` exceeds 1 %.
    pub warning: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evolution {
    pub record: PhotonRecord,
    /// det S at each sample; 1 for a Hamiltonian flow.
    pub determinants: Vec<f64>,
    /// Largest entry of |SᵀJS − J| over all samples.
    pub symplectic_residual: f64,
    pub truncation: Option<TruncationReport>,
}

/// Propagator in the scaled variables q̃ = √ω⁰ q, p̃ = p/√ω⁰. Rows 0..n hold
/// q̃, rows n..2n hold p̃; column j is the response to unit initial data in
/// coordinate j.
///
/// The integrated state is z = R(t)ᵀ y, where R(t) is the free rotation of
/// each mode at its rest frequency, so z only changes through the wall
/// motion.
struct Propagator<'a, L: LengthProfile + ?Sized> {
    system: &'a ModeSystem,
    length: &'a L,
    m_q: DMatrix<f64>,
    m_p: DMatrix<f64>,
    coupled: bool,
    scratch: RefCell<(DMatrix<f64>, DMatrix<f64>)>,
}

impl<'a, L: LengthProfile + ?Sized> Propagator<'a, L> {
    fn new(system: &'a ModeSystem, length: &'a L) -> Self {
        let n = system.n_modes();
        let w = &system.base_omegas;
        let m = system.coupling.to_dense();
        let m_q = DMatrix::from_fn(n, n, |a, b| m[(a, b)] * (w[a] / w[b]).sqrt());
        let m_p = DMatrix::from_fn(n, n, |a, b| m[(a, b)] * (w[b] / w[a]).sqrt());
        let coupled = m.iter().any(|&v| v != 0.0);
        let scratch = RefCell::new((DMatrix::zeros(2 * n, 2 * n), DMatrix::zeros(2 * n, 2 * n)));
        Self { system, length, m_q, m_p, coupled, scratch }
    }

    fn rotations(&self, t: f64) -> Vec<(f64, f64)> {
        self.system.base_omegas.iter().map(|w| (w * t).sin_cos()).collect()
    }

    /// y = R(t) z in place.
    fn to_lab(&self, t: f64, z: &mut DMatrix<f64>) {
        let n = self.system.n_modes();
        let rot = self.rotations(t);
        for j in 0..2 * n {
            for (i, &(s, c)) in rot.iter().enumerate() {
                let (q, p) = (z[(i, j)], z[(n + i, j)]);
                z[(i, j)] = c * q + s * p;
                z[(n + i, j)] = -s * q + c * p;
            }
        }
    }

    fn rhs(&self, t: f64, z: &[f64], dz: &mut [f64]) -> Result<()> {
        let n = self.system.n_modes();
        let size = 2 * n;
        let len = self.length.length(t);
        if !(len > 0.0) {
            return Err(Error::NonPositiveFrequency { t, omega: len });
        }
        let ratio = self.system.reference_length / len;
        let shift = ratio * ratio - 1.0;
        let lam = self.length.log_rate(t);
        let w = &self.system.base_omegas;
        let rot = self.rotations(t);
        let zv = DMatrixView::from_slice(z, size, size);
        let mut guard = self.scratch.borrow_mut();
        let (y, u) = &mut *guard;
        for j in 0..size {
            for (i, &(s, c)) in rot.iter().enumerate() {
                let (q, p) = (zv[(i, j)], zv[(n + i, j)]);
                y[(i, j)] = c * q + s * p;
                y[(n + i, j)] = -s * q + c * p;
            }
        }
        if self.coupled {
            u.rows_mut(0, n).gemm(lam, &self.m_q, &y.rows(0, n), 0.0);
            u.rows_mut(n, n).gemm(lam, &self.m_p, &y.rows(n, n), 0.0);
        } else {
            u.fill(0.0);
        }
        for j in 0..size {
            for i in 0..n {
                u[(n + i, j)] -= shift * w[i] * y[(i, j)];
            }
        }
        let mut dv = DMatrixViewMut::from_slice(dz, size, size);
        for j in 0..size {
            for (i, &(s, c)) in rot.iter().enumerate() {
                let (q, p) = (u[(i, j)], u[(n + i, j)]);
                dv[(i, j)] = c * q - s * p;
                dv[(n + i, j)] = s * q + c * p;
            }
        }
        Ok(())
    }

    /// Integrates from 0 (identity) to `t1`, returning the lab-frame
    /// propagator at each stop.
    fn run(&self, t1: f64, stops: &[f64], tol: f64) -> Result<Vec<(f64, DMatrix<f64>)>> {
        let size = 2 * self.system.n_modes();
        let solver = Dopri5::new(tol, tol);
        let mut out = Vec::new();
        let mut wanted: Vec<f64> = stops.iter().copied().filter(|&s| s > 0.0 && s <= t1).collect();
        wanted.sort_by(f64::total_cmp);
        wanted.dedup();
        let mut z = DMatrix::<f64>::identity(size, size);
        solver.integrate(
            |t, z, dz| self.rhs(t, z, dz),
            0.0,
            z.as_mut_slice(),
            t1,
            &wanted,
            |t, z, at_stop| {
                if at_stop && wanted.binary_search_by(|s| s.total_cmp(&t)).is_ok() {
                    let mut y = DMatrix::from_column_slice(size, size, z);
                    self.to_lab(t, &mut y);
                    out.push((t, y));
                }
            },
        )?;
        Ok(out)
    }
}

fn symplectic_residual(y: &DMatrix<f64>) -> f64 {
    let size = y.nrows();
    let n = size / 2;
    let j = DMatrix::from_fn(size, size, |a, b| {
        if b == a + n {
            1.0
        } else if a == b + n {
            -1.0
        } else {
            0.0
        }
    });
    (y.transpose() * &j * y - &j).amax()
}

/// Photon numbers in the instantaneous modes at wall length `length`, for
/// the vacuum of the instantaneous modes at wall length `initial_length`.
fn photon_numbers(system: &ModeSystem, initial_length: f64, length: f64, y: &DMatrix<f64>) -> Vec<f64> {
    let n = system.n_modes();
    let ratio = system.reference_length / length;
    let ratio0 = system.reference_length / initial_length;
    let second_moment = |row: usize| -> f64 {
        (0..2 * n)
            .map(|j| {
                let weight = if j < n { 1.0 / ratio0 } else { ratio0 };
                y[(row, j)] * y[(row, j)] * weight
            })
            .sum::<f64>()
            * 0.5
    };
    (0..n)
        .map(|i| {
            let qq = second_moment(i);
            let pp = second_moment(n + i);
            (0.5 * (pp / ratio + ratio * qq) - 0.5).max(0.0)
        })
        .collect()
}

fn matrix_power(base: &DMatrix<f64>, mut k: u64) -> DMatrix<f64> {
    let mut result = DMatrix::identity(base.nrows(), base.ncols());
    let mut square = base.clone();
    while k > 0 {
        if k & 1 == 1 {
            result = &result * &square;
        }
        k >>= 1;
        if k > 0 {
            square = &square * &square;
        }
    }
    result
}

/// Evolves the instantaneous vacuum at t = 0 under the wall motion `length` and
/// samples photon numbers at `times` (ascending, ≥ 0).
///
/// Periodic wall motion is propagated over one period and continued with
/// powers of the one-period map; other motions are integrated directly.
pub fn evolve_system<L: LengthProfile + ?Sized>(
    system: &ModeSystem,
    length: &L,
    times: &[f64],
    tol: f64,
) -> Result<Evolution> {
    if times.is_empty() {
        return Err(Error::invalid("times", "at least one sample time is required"));
    }
    if times.iter().any(|&t| !(t.is_finite() && t >= 0.0)) || times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::invalid("times", "must be finite, >= 0 and ascending"));
    }
    if !(tol > 1e-14 && tol < 1e-3) {
        return Err(Error::invalid("tol", format!("must lie in (1e-14, 1e-3), got {tol}")));
    }
    let n = system.n_modes();
    let size = 2 * n;
    let prop = Propagator::new(system, length);
    let t_max = *times.last().expect("non-empty");

    let states: Vec<DMatrix<f64>> = match length.period() {
        Some(period) if t_max > period => {
            let split: Vec<(u64, f64)> = times
                .iter()
                .map(|&t| {
                    let k = (t / period).floor();
                    let r = t - k * period;
                    if r >= period {
                        (k as u64 + 1, 0.0)
                    } else {
                        (k as u64, r)
                    }
                })
                .collect();
            let mut offsets: Vec<f64> = split.iter().map(|s| s.1).filter(|&r| r > 0.0).collect();
            offsets.push(period);
            offsets.sort_by(f64::total_cmp);
            offsets.dedup();
            // errors of the one-period map compound over k_max powers
            let k_max = split.iter().map(|s| s.0).max().unwrap_or(1).max(1);
            let inner = (tol / k_max as f64).max(MIN_PERIOD_TOL);
            let within = prop.run(period, &offsets, inner)?;
            let monodromy = within.last().expect("period is a stop").1.clone();
            let lookup = |r: f64| -> DMatrix<f64> {
                if r == 0.0 {
                    return DMatrix::identity(size, size);
                }
                let k = within.partition_point(|(s, _)| *s < r);
                within[k].1.clone()
            };
            split.iter().map(|&(k, r)| lookup(r) * matrix_power(&monodromy, k)).collect()
        }
        _ => {
            let stops: Vec<f64> = times.iter().copied().filter(|&t| t > 0.0).collect();
            let found = if t_max > 0.0 { prop.run(t_max, &stops, tol)? } else { Vec::new() };
            times
                .iter()
                .map(|&t| {
                    if t == 0.0 {
                        DMatrix::identity(size, size)
                    } else {
                        let k = found.partition_point(|(s, _)| *s < t);
                        found[k].1.clone()
                    }
                })
                .collect()
        }
    };

    let mut record = PhotonRecord::default();
    let mut determinants = Vec::with_capacity(times.len());
    let mut residual: f64 = 0.0;
    let initial_length = length.length(0.0);
    for (&t, y) in times.iter().zip(&states) {
        record.push(t, photon_numbers(system, initial_length, length.length(t), y), &system.base_omegas);
        determinants.push(y.clone().determinant());
        residual = residual.max(symplectic_residual(y));
    }
    Ok(Evolution { record, determinants, symplectic_residual: residual, truncation: None })
}

/// Checks how much of the final photon number sits in the highest modes.
pub fn check_truncation(record: &PhotonRecord) -> Result<TruncationReport> {
    let last = record.per_mode.last().ok_or_else(|| Error::invalid("record", "empty record"))?;
    let total: f64 = last.iter().sum();
    let n = last.len();
    if total <= 0.0 {
        return Ok(TruncationReport { top_share: 0.0, highest_share: 0.0, warning: false });
    }
    let top = n.div_ceil(10);
    let top_share = last[n - top..].iter().sum::<f64>() / total;
    let highest_share = last[n - 1] / total;
    if highest_share > 0.05 {
        return Err(Error::TruncationInsufficient { share: highest_share });
    }
    let warning = top_share > 0.01;
    if warning {
        log::warn!("highest {top} modes hold {:.2} % of all photons", 100.0 * top_share);
    }
    Ok(TruncationReport { top_share, highest_share, warning })
}

/// `count` equally spaced times from 0 to `t_end` inclusive.
pub fn uniform_times(t_end: f64, count: usize) -> Vec<f64> {
    if count <= 1 {
        return vec![t_end];
    }
    (0..count).map(|k| t_end * k as f64 / (count - 1) as f64).collect()
}

const MIN_PERIOD_TOL: f64 = 1e-13;

/// Default number of samples used by [`evolve_modes`].
pub const DEFAULT_SAMPLES: usize = 33;

/// Up to `count` whole multiples of the wall period in [0, t_end], where the
/// wall is back at its rest length; uniform times for aperiodic motion.
///
/// Between whole periods the instantaneous mode basis carries a sizeable
/// dressing population in the high modes, so photon counts are best read
/// stroboscopically.
pub fn stroboscopic_times<L: LengthProfile + ?Sized>(length: &L, t_end: f64, count: usize) -> Vec<f64> {
    let Some(period) = length.period() else {
        return uniform_times(t_end, count);
    };
    let k_max = (t_end / period).floor() as u64;
    let mut ks: Vec<u64> = if count <= 1 {
        vec![k_max]
    } else {
        (0..count).map(|i| (k_max as f64 * i as f64 / (count - 1) as f64).round() as u64).collect()
    };
    ks.dedup();
    ks.into_iter().map(|k| k as f64 * period).collect()
}

/// Evolves the 1D cavity vacuum up to `t_end`, sampling at whole wall
/// periods, and checks the truncation.
pub fn evolve_modes(
    geometry: &CavityGeometry1D,
    trajectory: &BoundaryTrajectory,
    coupling: &CouplingMatrix,
    t_end: f64,
    tol: f64,
) -> Result<Evolution> {
    let times = stroboscopic_times(trajectory, t_end, DEFAULT_SAMPLES);
    evolve_modes_at(geometry, trajectory, coupling, &times, tol)
}

pub fn evolve_modes_at(
    geometry: &CavityGeometry1D,
    trajectory: &BoundaryTrajectory,
    coupling: &CouplingMatrix,
    times: &[f64],
    tol: f64,
) -> Result<Evolution> {
    trajectory.validate()?;
    let system = ModeSystem::cavity_1d(geometry, coupling.clone())?;
    let mut evolution = evolve_system(&system, trajectory, times, tol)?;
    if system.n_modes() >= 2 {
        evolution.truncation = Some(check_truncation(&evolution.record)?);
    }
    Ok(evolution)
}
