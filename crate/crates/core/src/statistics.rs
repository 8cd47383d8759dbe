//! Photon-number distributions of parametrically created fields.
//!
//! The asymptotic resonant distribution f_dce(m) = (2πNm)^{-1/2} e^{-m/2N}
//! is much broader at small m than the thermal e^{-m/N}/N of equal mean.
//! The exact single-mode squeezed vacuum serves as an oracle for the former.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::erf::erf;

use crate::error::{Error, Result};

/// Support of the asymptotic distributions ends at `TRUNCATION_FACTOR·N`.
pub const TRUNCATION_FACTOR: f64 = 50.0;

/// Asymptotic probability of m photons in the resonant regime.
pub fn f_dce(n_mean: f64, m: f64) -> f64 {
    if n_mean < 10.0 || m < 5.0 {
        log::warn!("f_dce outside its asymptotic range (N = {n_mean}, m = {m})");
    }
    (2.0 * std::f64::consts::PI * n_mean * m).powf(-0.5) * (-m / (2.0 * n_mean)).exp()
}

/// Thermal distribution of mean N in the continuum limit.
pub fn f_thermal(n_mean: f64, m: f64) -> f64 {
    if n_mean < 10.0 {
        log::warn!("f_thermal outside its asymptotic range (N = {n_mean})");
    }
    (-m / n_mean).exp() / n_mean
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistributionKind {
    DceAsymptotic,
    ThermalAsymptotic,
    SqueezedExact,
}

impl DistributionKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            DistributionKind::DceAsymptotic => "dce_asymptotic",
            DistributionKind::ThermalAsymptotic => "thermal_asymptotic",
            DistributionKind::SqueezedExact => "squeezed_exact",
        }
    }
}

/// Discrete distribution on m = 0, 1, … with a cumulative table for sampling.
///
/// For the asymptotic kinds, P(m) is the continuum density integrated over
/// the cell [m − ½, m + ½] clipped at zero, which keeps the integrable
/// m^{-1/2} singularity of f_dce finite.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonDistribution {
    pub kind: DistributionKind,
    pub n_mean: f64,
    probs: Vec<f64>,
    cdf: Vec<f64>,
}

fn check_mean(n_mean: f64) -> Result<()> {
    if !(n_mean.is_finite() && n_mean > 0.0) {
        return Err(Error::invalid("n_mean", "must be finite and > 0"));
    }
    if n_mean > 1e7 {
        return Err(Error::invalid("n_mean", "support table would exceed 5e8 entries"));
    }
    Ok(())
}

impl PhotonDistribution {
    fn from_probs(kind: DistributionKind, n_mean: f64, probs: Vec<f64>) -> Self {
        let mut acc = 0.0;
        let cdf = probs
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Self { kind, n_mean, probs, cdf }
    }

    fn support(n_mean: f64) -> usize {
        (TRUNCATION_FACTOR * n_mean).ceil() as usize + 1
    }

    pub fn dce(n_mean: f64) -> Result<Self> {
        check_mean(n_mean)?;
        if n_mean < 10.0 {
            log::warn!("asymptotic resonant distribution used at N = {n_mean}");
        }
        let cum = |x: f64| erf((x / (2.0 * n_mean)).sqrt());
        let probs = (0..Self::support(n_mean))
            .map(|m| {
                let m = m as f64;
                cum(m + 0.5) - cum((m - 0.5).max(0.0))
            })
            .collect();
        Ok(Self::from_probs(DistributionKind::DceAsymptotic, n_mean, probs))
    }

    pub fn thermal(n_mean: f64) -> Result<Self> {
        check_mean(n_mean)?;
        if n_mean < 10.0 {
            log::warn!("asymptotic thermal distribution used at N = {n_mean}");
        }
        let probs = (0..Self::support(n_mean))
            .map(|m| {
                let m = m as f64;
                (-(m - 0.5).max(0.0) / n_mean).exp() - (-(m + 0.5) / n_mean).exp()
            })
            .collect();
        Ok(Self::from_probs(DistributionKind::ThermalAsymptotic, n_mean, probs))
    }

    /// Exact squeezed vacuum with mean N: P(2k) = (2k)!/(2^k k!)² · tanh^{2k}r / cosh r
    /// with sinh²r = N, and all odd probabilities zero.
    pub fn squeezed(n_mean: f64) -> Result<Self> {
        check_mean(n_mean)?;
        let ratio = n_mean / (n_mean + 1.0);
        let mut probs = Vec::new();
        let mut p = 1.0 / (n_mean + 1.0).sqrt();
        let mut total = 0.0;
        let mut k = 0usize;
        loop {
            probs.push(p);
            probs.push(0.0);
            total += p;
            // remaining tail bounded by a geometric series in `ratio`
            if p * (2 * k) as f64 > 0.0 && p / (1.0 - ratio) < 1e-17 * total {
                break;
            }
            p *= (2 * k + 1) as f64 / (2 * k + 2) as f64 * ratio;
            k += 1;
        }
        probs.pop();
        for q in probs.iter_mut() {
            *q /= total;
        }
        Ok(Self::from_probs(DistributionKind::SqueezedExact, n_mean, probs))
    }

    pub fn probability(&self, m: u64) -> f64 {
        self.probs.get(m as usize).copied().unwrap_or(0.0)
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn support_len(&self) -> usize {
        self.probs.len()
    }

    pub fn normalization(&self) -> f64 {
        self.cdf.last().copied().unwrap_or(0.0)
    }

    /// Mean of the truncated table.
    pub fn mean(&self) -> f64 {
        self.probs.iter().enumerate().map(|(m, p)| m as f64 * p).sum::<f64>() / self.normalization()
    }

    /// Average of P(2k) and P(2k+1), attributed to the pair centre 2k + ½.
    pub fn pair_averaged(&self, k: u64) -> (f64, f64) {
        let m = 2 * k;
        (m as f64 + 0.5, 0.5 * (self.probability(m) + self.probability(m + 1)))
    }

    pub fn sampler(&self, seed: u64) -> PhotonSampler<'_> {
        PhotonSampler { dist: self, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

/// Inverse-CDF sampler with its own seeded generator.
#[derive(Debug, Clone)]
pub struct PhotonSampler<'a> {
    dist: &'a PhotonDistribution,
    rng: ChaCha8Rng,
}

impl PhotonSampler<'_> {
    pub fn sample(&mut self) -> u64 {
        let u = self.rng.random::<f64>() * self.dist.normalization();
        let idx = self.dist.cdf.partition_point(|&c| c <= u);
        idx.min(self.dist.cdf.len() - 1) as u64
    }
}

impl Iterator for PhotonSampler<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        Some(self.sample())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pointwise_values() {
        assert!((f_dce(100.0, 50.0) - 0.004394).abs() < 1e-6);
        let oracle = (-2.0f64).exp() / (2.0 * std::f64::consts::PI * 4e4).sqrt();
        assert!((f_dce(100.0, 400.0) - oracle).abs() < 1e-15);
        assert!((f_dce(100.0, 400.0) / 2.697e-4 - 1.0).abs() < 2e-3);
        assert!((f_thermal(100.0, 100.0) - 0.003679).abs() < 1e-6);
        assert_eq!(f_thermal(100.0, 0.0), 0.01);
        assert!(f_dce(100.0, 1.0) / f_thermal(100.0, 1.0) > 3.0);
        assert!(f_dce(100.0, 1e-6) / f_thermal(100.0, 1e-6) > 1e3);
    }

    #[test]
    fn truncated_normalization() {
        for n in [10.0, 100.0, 1000.0] {
            let d = PhotonDistribution::dce(n).unwrap();
            let t = PhotonDistribution::thermal(n).unwrap();
            assert!((d.normalization() - 1.0).abs() < 1e-3);
            assert!((t.normalization() - 1.0).abs() < 1e-3);
            assert!((t.mean() / n - 1.0).abs() < 0.01);
            assert!((d.mean() / n - 1.0).abs() < 0.01);
        }
    }

    /// P(2k) from log-factorials, independent of the recursion.
    fn squeezed_direct(n: f64, k: u64) -> f64 {
        let lnfact = |x: u64| statrs::function::gamma::ln_gamma(x as f64 + 1.0);
        let ln = lnfact(2 * k) - 2.0 * lnfact(k) - (2 * k) as f64 * 2f64.ln() + k as f64 * (n / (n + 1.0)).ln()
            - 0.5 * (n + 1.0).ln();
        ln.exp()
    }

    #[test]
    fn squeezed_oracle_structure() {
        let d = PhotonDistribution::squeezed(100.0).unwrap();
        assert!((d.normalization() - 1.0).abs() < 1e-12);
        assert!((d.mean() - 100.0).abs() < 1e-9, "{}", d.mean());
        for m in (1..400).step_by(2) {
            assert_eq!(d.probability(m), 0.0);
        }
        for k in [0, 1, 7, 60, 300] {
            assert!((d.probability(2 * k) / squeezed_direct(100.0, k) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn oracle_matches_asymptotic_form() {
        let d = PhotonDistribution::squeezed(100.0).unwrap();
        for k in 5..=250 {
            let (m, p) = d.pair_averaged(k);
            let f = f_dce(100.0, m);
            assert!((p / f - 1.0).abs() <= 0.05, "m = {m}");
        }
    }

    #[test]
    fn sampling_is_seeded() {
        let d = PhotonDistribution::dce(50.0).unwrap();
        let a: Vec<u64> = d.sampler(7).take(1000).collect();
        let b: Vec<u64> = d.sampler(7).take(1000).collect();
        let c: Vec<u64> = d.sampler(8).take(1000).collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn sample_means() {
        for d in [PhotonDistribution::dce(100.0).unwrap(), PhotonDistribution::thermal(100.0).unwrap()] {
            let n = 200_000;
            let mean = d.sampler(42).take(n).map(|m| m as f64).sum::<f64>() / n as f64;
            assert!((mean / d.mean() - 1.0).abs() < 0.02, "{:?}", d.kind);
        }
    }

    proptest! {
        #[test]
        fn densities_decrease(n in 1.0f64..1e4, m in 1.0f64..1e5, dm in 0.01f64..100.0) {
            prop_assert!(f_dce(n, m) >= 0.0 && f_thermal(n, m) >= 0.0);
            prop_assert!(f_dce(n, m + dm) <= f_dce(n, m));
            prop_assert!(f_thermal(n, m + dm) <= f_thermal(n, m));
        }

        #[test]
        fn squeezed_mean_exact(n in 0.01f64..300.0) {
            let d = PhotonDistribution::squeezed(n).unwrap();
            prop_assert!((d.mean() - n).abs() < 1e-9 * n.max(1.0));
        }
    }
}
