use dce_core::oscillator::*;
use proptest::prelude::*;

/// Matching ε and ε̇ across an instantaneous jump gives
/// ρ± = ½(√(ω_f/ω_i) ∓ √(ω_i/ω_f)) up to phases.
fn junction_reflection(omega_i: f64, omega_f: f64) -> f64 {
    let a = (omega_f / omega_i).sqrt();
    let b = (omega_i / omega_f).sqrt();
    ((a - b) / (a + b)).powi(2)
}

#[test]
fn sudden_jump_matches_junction() {
    let profile = FrequencyProfile::sudden_jump(1.0, 2.0, 3.0).unwrap();
    let fit = bogoliubov_for_profile(&profile, 1e-10).unwrap();
    assert!((fit.pair.reflection() - junction_reflection(1.0, 2.0)).abs() < 1e-9);
    assert!((junction_reflection(1.0, 2.0) - 1.0 / 9.0).abs() < 1e-15);
    assert!(fit.pair.normalization_defect().abs() < 1e-9);
}

#[test]
fn slow_ramp_is_adiabatic() {
    let profile = FrequencyProfile::smooth_ramp(1.0, 2.0, 0.0, 20.0).unwrap();
    let fit = bogoliubov_for_profile(&profile, 1e-10).unwrap();
    assert!(fit.pair.reflection() < 1e-8);
}

fn monotone_profile() -> impl Strategy<Value = FrequencyProfile> {
    let ramp = (0.3f64..3.0, 0.3f64..3.0, 0.02f64..3.0)
        .prop_map(|(wi, wf, width)| FrequencyProfile::smooth_ramp(wi, wf, 0.0, width).unwrap());
    let table = (0.3f64..3.0, 0.3f64..3.0, proptest::collection::vec(0.0f64..1.0, 3..8), 0.2f64..5.0).prop_map(
        |(wi, wf, mut steps, span)| {
            steps.sort_by(f64::total_cmp);
            let n = steps.len() + 2;
            let times: Vec<f64> = (0..n).map(|k| span * k as f64 / (n - 1) as f64).collect();
            let mut values = vec![wi];
            values.extend(steps.iter().map(|s| wi + (wf - wi) * s));
            values.push(wf);
            FrequencyProfile::tabulated(times, values).unwrap()
        },
    );
    prop_oneof![ramp, table]
}

fn any_profile() -> impl Strategy<Value = FrequencyProfile> {
    let burst = (0.5f64..2.0, 0.0f64..0.2, 0.5f64..4.0, 0.0f64..6.3, 1.0f64..30.0).prop_map(|(w0, k, wm, ph, len)| {
        FrequencyProfile::harmonic_with(w0, k, wm, ph, Some((0.0, len))).unwrap()
    });
    prop_oneof![monotone_profile(), burst]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bogoliubov_normalization(profile in any_profile()) {
        let fit = bogoliubov_for_profile(&profile, 1e-9).unwrap();
        prop_assert!(fit.pair.normalization_defect().abs() <= 1e-6);
    }

    #[test]
    fn reflection_below_fresnel(profile in monotone_profile()) {
        prop_assume!(profile.is_monotone());
        let fit = bogoliubov_for_profile(&profile, 1e-9).unwrap();
        let bound = fresnel_bound(profile.initial_omega(), profile.final_omega()).unwrap();
        prop_assert!(fit.pair.reflection() <= bound + 1e-4);
    }

    #[test]
    fn photon_number_forms_agree(wi in 0.5f64..2.0, wf in 0.5f64..2.0, width in 0.05f64..1.0, g in 1.0f64..4.0) {
        let profile = FrequencyProfile::smooth_ramp(wi, wf, 0.0, width).unwrap();
        let (_, b) = profile.transition_span().unwrap();
        let tail = 6.0 * std::f64::consts::TAU / wf;
        let traj = integrate_classical(&profile, -25.0 * width - 3.0, b + tail, 1e-10).unwrap();
        let fit = extract_bogoliubov(&traj, wf, None).unwrap();
        let thermal = ThermalState::with_factor(g).unwrap();
        let k = traj.len() - 1;
        let raw = photon_number_raw(traj.epsilon[k], traj.epsilon_dot[k], wf, &thermal);
        let from_pair = photon_number(&fit.pair, &thermal);
        prop_assert!((raw - from_pair).abs() <= 1e-6 * from_pair.max(0.1));
    }
}
