use dce_core::cavity::*;
use dce_core::oscillator::FrequencyProfile;
use dce_core::resonance::numeric_photon_number;
use proptest::prelude::*;

#[test]
fn single_mode_cavity_is_modulated_oscillator() {
    // L = L₀/(1 + 2κ cos 2t) gives ω₁(t) = 1 + 2κ cos 2t for a lone mode
    let g = CavityGeometry1D::with_fundamental(1.0, 1).unwrap();
    let kappa = 0.01;
    let wall = BoundaryTrajectory::reciprocal_cosine(g.length, kappa, 2.0).unwrap();
    let system = ModeSystem::cavity_1d(&g, CouplingMatrix::zeros(1)).unwrap();
    let profile = FrequencyProfile::harmonic(1.0, kappa).unwrap();
    // quarter periods, where the instantaneous frequency is back at ω₀
    let times: Vec<f64> = [10.25, 50.75, 95.25].iter().map(|k| k * std::f64::consts::PI).collect();
    let evolution = evolve_system(&system, &wall, &times, 1e-11).unwrap();
    for (i, &t) in times.iter().enumerate() {
        let oscillator = numeric_photon_number(&profile, 1.0, 1.0, t, 1e-11).unwrap();
        let cavity = evolution.record.per_mode[i][0];
        assert!((cavity - oscillator).abs() <= 1e-6 * oscillator.max(1.0), "t = {t}: {cavity} vs {oscillator}");
    }
}

#[test]
fn averaged_and_direct_track_each_other() {
    let g = CavityGeometry1D::with_fundamental(1.0, 8).unwrap();
    let coupling = coupling_matrix_1d(&g).unwrap();
    let wall = BoundaryTrajectory::resonant(&g, 0.01).unwrap();
    let system = ModeSystem::cavity_1d(&g, coupling).unwrap();
    let times = stroboscopic_times(&wall, 100.0, 5);
    let direct = evolve_system(&system, &wall, &times, 1e-10).unwrap();
    let averaged = evolve_averaged(&system, &wall, &times).unwrap();
    for i in 1..times.len() {
        let (d, a) = (direct.record.total[i], averaged.total[i]);
        assert!((d - a).abs() <= 0.1 * a, "{d} vs {a}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn evolution_is_symplectic(n in 2usize..6, kappa in 0.0f64..0.05, t in 1.0f64..60.0) {
        let g = CavityGeometry1D::with_fundamental(1.0, n).unwrap();
        let wall = BoundaryTrajectory::resonant(&g, kappa).unwrap();
        let system = ModeSystem::cavity_1d(&g, coupling_matrix_1d(&g).unwrap()).unwrap();
        let e = evolve_system(&system, &wall, &[0.5 * t, t], 1e-10).unwrap();
        for d in &e.determinants {
            prop_assert!((d - 1.0).abs() < 1e-6);
        }
        prop_assert!(e.symplectic_residual < 1e-6);
        prop_assert!(e.record.total.iter().all(|&x| x >= 0.0));
    }
}
