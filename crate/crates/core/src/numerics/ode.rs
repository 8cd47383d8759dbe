//! Adaptive Dormand–Prince 5(4) integrator for real first-order systems.
//!
//! Complex systems are integrated by interleaving real and imaginary parts in
//! the state slice. The integrator can be forced to land exactly on a list of
//! stop times, which is how callers obtain samples on a prescribed grid or
//! restart at frequency breakpoints.

use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Step-size controller settings.
#[derive(Debug, Clone, Copy)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    /// Upper bound on the step size (infinite by default).
    pub h_max: f64,
}

/// Counters collected over one call to [`Dopri5::integrate`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OdeStats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

impl Dopri5 {
    pub fn new(rtol: f64, atol: f64) -> Self {
        Self { rtol, atol, max_steps: 50_000_000, h_max: f64::INFINITY }
    }

    pub fn with_h_max(mut self, h_max: f64) -> Self {
        self.h_max = h_max;
        self
    }

    /// Integrates `y' = rhs(t, y)` from `t0` to `t_end`, overwriting `y`.
    ///
    /// `stops` must be ascending; every stop inside `(t0, t_end]` is hit
    /// exactly. `observer(t, y, at_stop)` runs after every accepted step.
    pub fn integrate<F, O>(
        &self,
        mut rhs: F,
        t0: f64,
        y: &mut [f64],
        t_end: f64,
        stops: &[f64],
        mut observer: O,
    ) -> Result<OdeStats>
    where
        F: FnMut(f64, &[f64], &mut [f64]) -> Result<()>,
        O: FnMut(f64, &[f64], bool),
    {
        let n = y.len();
        let mut stats = OdeStats::default();
        if t_end <= t0 {
            return Ok(stats);
        }
        let mut k1 = vec![0.0; n];
        let mut k2 = vec![0.0; n];
        let mut k3 = vec![0.0; n];
        let mut k4 = vec![0.0; n];
        let mut k5 = vec![0.0; n];
        let mut k6 = vec![0.0; n];
        let mut k7 = vec![0.0; n];
        let mut tmp = vec![0.0; n];
        let mut y_new = vec![0.0; n];

        let mut targets: Vec<f64> =
            stops.iter().copied().filter(|&s| s > t0 && s < t_end).collect();
        targets.push(t_end);
        let mut next_target = 0;

        let mut t = t0;
        rhs(t, y, &mut k1)?;
        stats.evaluations += 1;
        let mut h = self.initial_step(y, &k1, t_end - t0);
        let mut last_rejected = false;

        while next_target < targets.len() {
            if stats.accepted + stats.rejected >= self.max_steps {
                return Err(Error::ToleranceNotMet { t, step: h });
            }
            let target = targets[next_target];
            let mut hits_target = false;
            let mut h_try = h.min(self.h_max);
            if t + h_try >= target || (target - t - h_try) < 1e-12 * h_try {
                h_try = target - t;
                hits_target = true;
            }
            if h_try <= 1e-14 * t.abs().max(1.0) {
                return Err(Error::ToleranceNotMet { t, step: h_try });
            }

            for i in 0..n {
                tmp[i] = y[i] + h_try * A21 * k1[i];
            }
            rhs(t + C2 * h_try, &tmp, &mut k2)?;
            for i in 0..n {
                tmp[i] = y[i] + h_try * (A31 * k1[i] + A32 * k2[i]);
            }
            rhs(t + C3 * h_try, &tmp, &mut k3)?;
            for i in 0..n {
                tmp[i] = y[i] + h_try * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
            }
            rhs(t + C4 * h_try, &tmp, &mut k4)?;
            for i in 0..n {
                tmp[i] =
                    y[i] + h_try * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
            }
            rhs(t + C5 * h_try, &tmp, &mut k5)?;
            for i in 0..n {
                tmp[i] = y[i]
                    + h_try
                        * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
            }
            rhs(t + h_try, &tmp, &mut k6)?;
            for i in 0..n {
                y_new[i] = y[i]
                    + h_try
                        * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i] + A75 * k5[i] + A76 * k6[i]);
            }
            rhs(t + h_try, &y_new, &mut k7)?;
            stats.evaluations += 6;

            let mut err_sq = 0.0;
            for i in 0..n {
                let e = h_try
                    * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let scale = self.atol + self.rtol * y[i].abs().max(y_new[i].abs());
                err_sq += (e / scale) * (e / scale);
            }
            let err = (err_sq / n as f64).sqrt();

            if err <= 1.0 {
                stats.accepted += 1;
                t = if hits_target { target } else { t + h_try };
                y.copy_from_slice(&y_new);
                std::mem::swap(&mut k1, &mut k7);
                observer(t, y, hits_target);
                if hits_target {
                    next_target += 1;
                }
                let mut fac = if err == 0.0 { 5.0 } else { 0.9 * err.powf(-0.2) };
                fac = fac.clamp(0.2, 5.0);
                if last_rejected {
                    fac = fac.min(1.0);
                }
                // keep the controller's preferred step when a stop shortened this one
                h = if hits_target { h.max(h_try) } else { h_try * fac };
                last_rejected = false;
            } else {
                stats.rejected += 1;
                let fac = if err.is_finite() { (0.9 * err.powf(-0.2)).clamp(0.1, 1.0) } else { 0.1 };
                h = h_try * fac;
                last_rejected = true;
            }
        }
        Ok(stats)
    }

    fn initial_step(&self, y: &[f64], f0: &[f64], span: f64) -> f64 {
        let n = y.len() as f64;
        let mut d0 = 0.0;
        let mut d1 = 0.0;
        for (yi, fi) in y.iter().zip(f0) {
            let sc = self.atol + self.rtol * yi.abs();
            d0 += (yi / sc).powi(2);
            d1 += (fi / sc).powi(2);
        }
        let d0 = (d0 / n).sqrt();
        let d1 = (d1 / n).sqrt();
        let h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        h.min(span).min(self.h_max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay_matches_closed_form() {
        let solver = Dopri5::new(1e-10, 1e-12);
        let mut y = vec![1.0];
        solver
            .integrate(
                |_, y, dy| {
                    dy[0] = -y[0];
                    Ok(())
                },
                0.0,
                &mut y,
                5.0,
                &[],
                |_, _, _| {},
            )
            .unwrap();
        assert!((y[0] - (-5.0f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn lands_exactly_on_stops() {
        let solver = Dopri5::new(1e-8, 1e-10);
        let mut y = vec![0.0, 1.0];
        let stops = [0.5, 1.25, 3.0];
        let mut seen = Vec::new();
        solver
            .integrate(
                |_, y, dy| {
                    dy[0] = y[1];
                    dy[1] = -y[0];
                    Ok(())
                },
                0.0,
                &mut y,
                4.0,
                &stops,
                |t, y, stop| {
                    if stop {
                        seen.push((t, y[0]));
                    }
                },
            )
            .unwrap();
        let times: Vec<f64> = seen.iter().map(|s| s.0).collect();
        assert_eq!(times, vec![0.5, 1.25, 3.0, 4.0]);
        for (t, x) in seen {
            assert!((x - t.sin()).abs() < 1e-7);
        }
    }

    #[test]
    fn rhs_errors_propagate() {
        let solver = Dopri5::new(1e-8, 1e-10);
        let mut y = vec![1.0];
        let res = solver.integrate(
            |t, _, dy| {
                if t > 0.5 {
                    return Err(Error::NonPositiveFrequency { t, omega: -1.0 });
                }
                dy[0] = 0.0;
                Ok(())
            },
            0.0,
            &mut y,
            1.0,
            &[],
            |_, _, _| {},
        );
        assert!(matches!(res, Err(Error::NonPositiveFrequency { .. })));
    }
}
