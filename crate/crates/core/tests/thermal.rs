mod common;

use proptest::prelude::*;
use thermo_core::gibbs::ThermalProbe;
use thermo_core::numeric::logspace;
use thermo_core::{
    build_hamiltonian, build_m_matrix, eigendecompose, fermionic_probe_population,
    fermionic_probe_population_derivative, gibbs_weights, partition_function, probe_state,
    transition_spectrum, transitions_vs_parameter, two_qubit_closed_form, two_qubit_population,
    two_qubit_thermal_state, ChainSpec, ParameterSelector,
};

#[test]
fn diagonalization_and_fermions_agree() {
    let mut worst = 0.0f64;
    for spec in common::ensemble(2024, 200) {
        let probe = ThermalProbe::new(&spec).unwrap();
        let spectrum = transition_spectrum(&build_m_matrix(&spec)).unwrap();
        for t in common::temperatures() {
            let ed = probe.at(t).unwrap();
            let ff = fermionic_probe_population(&spectrum, t).unwrap();
            worst = worst.max((ed.state.p - ff).abs());
            let dff = fermionic_probe_population_derivative(&spectrum, t).unwrap();
            assert!((ed.dp_dt - dff).abs() <= 1e-8 * dff.abs().max(1e-6), "{spec:?} T={t}");
        }
    }
    assert!(worst < 1e-10, "{worst}");
}

#[test]
fn five_qubit_preset_agrees_down_to_tiny_temperatures() {
    let spec = common::fig10(0.0005);
    let probe = ThermalProbe::new(&spec).unwrap();
    let spectrum = transition_spectrum(&build_m_matrix(&spec)).unwrap();
    for t in logspace(1e-4, 10.0, 40) {
        let ed = probe.at(t).unwrap().state.p;
        let ff = fermionic_probe_population(&spectrum, t).unwrap();
        assert!((ed - ff).abs() < 1e-10, "T={t}");
    }
}

#[test]
fn probe_state_has_no_coherence() {
    for spec in common::ensemble(7, 200).into_iter().filter(|s| s.n_qubits() <= 5) {
        let probe = ThermalProbe::new(&spec).unwrap();
        for t in common::temperatures() {
            let s = probe.at(t).unwrap().state;
            assert!((s.trace() - 1.0).abs() < 1e-12);
            assert!(s.min_eigenvalue() > -1e-12);
            assert!(s.coherence_magnitude < 1e-12, "{spec:?} T={t}: {}", s.coherence_magnitude);
        }
    }
}

#[test]
fn full_partial_trace_route() {
    let mut rng = common::rng(5);
    for n in 2..=4 {
        let spec = common::random_spec(&mut rng, n);
        let probe = ThermalProbe::new(&spec).unwrap();
        for t in [0.01, 0.3, 5.0] {
            let slow = probe_state(&spec, t).unwrap();
            let fast = probe.at(t).unwrap().state;
            assert!((slow.p - fast.p).abs() < 1e-13);
            assert!(slow.coherence_magnitude < 1e-12);
        }
    }
}

#[test]
fn closed_form_population_on_two_qubit_presets() {
    let presets = [
        (1.0, 1.0, 0.04, 0.02),
        (0.04, 1.0, 0.04, 0.02),
        (0.04, 1.0, 0.05, 0.01),
        (0.04, 1.0, 0.05, 0.03),
        (1.0, 1.0, 0.35, 0.15),
    ];
    for (wa, wp, j, g) in presets {
        let cf = two_qubit_closed_form(wa, wp, j, g);
        let probe = ThermalProbe::new(&cf.spec().unwrap()).unwrap();
        for t in logspace(1e-3, 1e2, 60) {
            let closed = two_qubit_population(&cf, t).unwrap();
            assert!((probe.at(t).unwrap().state.p - closed).abs() < 1e-12);
            let s = two_qubit_thermal_state(&cf, t).unwrap();
            assert!((s.d1 + s.d2 + s.d3 + s.d4 - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn closed_form_density_matrix_at_fig3b() {
    let cf = two_qubit_closed_form(0.04, 1.0, 0.04, 0.02);
    let decomp = eigendecompose(&build_hamiltonian(&cf.spec().unwrap())).unwrap();
    let rho = gibbs_weights(&decomp, 0.1).unwrap().density_matrix();
    let diff = rho - two_qubit_thermal_state(&cf, 0.1).unwrap().matrix();
    assert!(diff.iter().all(|z| z.norm() < 1e-12));
}

#[test]
fn derivative_matches_richardson() {
    for spec in common::ensemble(99, 40) {
        let probe = ThermalProbe::new(&spec).unwrap();
        for t in common::temperatures() {
            let analytic = probe.at(t).unwrap().dp_dt;
            if analytic.abs() <= 1e-12 {
                continue;
            }
            let numeric = common::richardson(|x| probe.excess_population(x).unwrap(), t);
            assert!(
                (analytic - numeric).abs() <= 1e-6 * analytic.abs(),
                "{spec:?} T={t}: {analytic} vs {numeric}"
            );
        }
    }
}

#[test]
fn cold_probe_is_unexcited() {
    for wa in [1.0, 0.04] {
        let spec = ChainSpec::two_qubit(wa, 1.0, 0.04, 0.02).unwrap();
        assert!(probe_state(&spec, 1e-4).unwrap().p < 1e-10);
    }
}

#[test]
fn fig3_derivative_peaks() {
    let t = logspace(1e-3, 10.0, 400);
    let count = |wa: f64| {
        let probe = ThermalProbe::new(&ChainSpec::two_qubit(wa, 1.0, 0.04, 0.02).unwrap()).unwrap();
        let dp: Vec<f64> = t.iter().map(|&x| probe.at(x).unwrap().dp_dt).collect();
        thermo_core::detect_peaks(&t, &dp).unwrap().len()
    };
    assert_eq!(count(1.0), 1);
    assert_eq!(count(0.04), 2);
}

#[test]
fn partition_functions_agree() {
    for spec in common::ensemble(31, 40) {
        let decomp = eigendecompose(&build_hamiltonian(&spec)).unwrap();
        let spectrum = transition_spectrum(&build_m_matrix(&spec)).unwrap();
        let offset: f64 = spec.omegas().iter().sum::<f64>() / 2.0;
        for t in common::temperatures() {
            let spin = gibbs_weights(&decomp, t).unwrap().log_partition();
            let fermion = partition_function(&spectrum, t).unwrap() + offset / t;
            assert!((spin - fermion).abs() < 1e-10 * spin.abs().max(1.0), "T={t}");
        }
    }
}

#[test]
fn two_qubit_modes_are_channel_frequencies() {
    let cf = two_qubit_closed_form(0.04, 1.0, 0.05, 0.03);
    let s = transition_spectrum(&build_m_matrix(&cf.spec().unwrap())).unwrap();
    assert!((s.energies()[0] - cf.omega_minus).abs() < 1e-12);
    assert!((s.energies()[1] - cf.omega_plus).abs() < 1e-12);
    assert!((s.energies()[0] - 0.026).abs() < 1e-3);
    assert!((s.energies()[1] - 1.013).abs() < 2e-3);
}

#[test]
fn transition_branches() {
    let top = ChainSpec::new(vec![0.004, 0.04, 0.4, 1.0], vec![0.007, 0.06, 0.4], vec![0.005, 0.04, 0.4])
        .unwrap();
    let grid = logspace(1e-3, 0.1, 20);
    let table = transitions_vs_parameter(&top, ParameterSelector::Dm(2), &grid).unwrap();
    assert_eq!(table.energies.len(), 20);
    assert!(table.energies.iter().all(|row| row.len() == 4));

    let bottom = ChainSpec::new(vec![0.004, 0.04, 0.4, 1.0], vec![0.006, 0.04, 0.4], vec![0.004, 2.0, 0.4])
        .unwrap();
    let e = transition_spectrum(&build_m_matrix(&bottom)).unwrap();
    // strong middle link: two levels pushed far apart, two stay small
    let mags: Vec<f64> = e.energies().iter().map(|x| x.abs()).collect();
    assert!(mags.iter().filter(|&&m| m > 2.0).count() == 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn probe_weights_form_a_distribution(
        w in prop::collection::vec(0.01f64..2.0, 4),
        j in prop::collection::vec(-0.5f64..0.5, 3),
        g in prop::collection::vec(-0.5f64..0.5, 3),
    ) {
        let spec = ChainSpec::new(w, j, g).unwrap();
        let s = transition_spectrum(&build_m_matrix(&spec)).unwrap();
        prop_assert!((s.probe_weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(s.energies().windows(2).all(|x| x[0] <= x[1]));
    }

    #[test]
    fn decoupled_population_monotone_and_bounded(w in 0.05f64..3.0, t0 in 1e-3f64..10.0, r in 1.01f64..3.0) {
        let spec = ChainSpec::two_qubit(0.7, w, 0.0, 0.0).unwrap();
        let probe = ThermalProbe::new(&spec).unwrap();
        let lo = probe.at(t0).unwrap().state.p;
        let hi = probe.at(t0 * r).unwrap().state.p;
        prop_assert!(lo <= hi);
        prop_assert!((0.0..=0.5).contains(&hi));
    }
}
