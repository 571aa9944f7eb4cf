mod common;

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use thermo_core::chain::total_sigma_z;
use thermo_core::{
    build_hamiltonian, eigendecompose, pauli_at, two_qubit_closed_form, Axis, ChainSpec,
    HermitianOperator,
};

fn pauli_sum_oracle(spec: &ChainSpec) -> DMatrix<Complex64> {
    let n = spec.n_qubits();
    let dim = 1 << n;
    let p = |site, axis| pauli_at(site, axis, n).unwrap().into_matrix();
    let mut h = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for i in 1..=n {
        h += p(i, Axis::Z) * Complex64::new(spec.omegas()[i - 1] / 2.0, 0.0);
    }
    for i in 1..n {
        let j = Complex64::new(spec.xx_couplings()[i - 1], 0.0);
        let g = Complex64::new(spec.dm_couplings()[i - 1], 0.0);
        h += (p(i, Axis::X) * p(i + 1, Axis::X) + p(i, Axis::Y) * p(i + 1, Axis::Y)) * j;
        h += (p(i, Axis::X) * p(i + 1, Axis::Y) - p(i, Axis::Y) * p(i + 1, Axis::X)) * g;
    }
    h
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0, |a, z| a.max(z.norm()))
}

fn spec_strategy() -> impl Strategy<Value = ChainSpec> {
    (2usize..=5).prop_flat_map(|n| {
        (
            prop::collection::vec(0.01f64..2.0, n),
            prop::collection::vec(-0.5f64..0.5, n - 1),
            prop::collection::vec(-0.5f64..0.5, n - 1),
        )
            .prop_map(|(w, j, g)| ChainSpec::new(w, j, g).unwrap())
    })
}

#[test]
fn hamiltonian_equals_pauli_sum() {
    let mut rng = common::rng(11);
    for n in [2, 3, 4] {
        for _ in 0..5 {
            let spec = common::random_spec(&mut rng, n);
            let diff = build_hamiltonian(&spec).into_matrix() - pauli_sum_oracle(&spec);
            assert!(max_abs(&diff) < 1e-14, "N={n}");
        }
    }
}

#[test]
fn random_hermitian_reconstruction() {
    let mut rng = common::rng(3);
    use rand::Rng;
    let a = DMatrix::from_fn(8, 8, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let h = HermitianOperator::new((&a + a.adjoint()) * Complex64::new(0.5, 0.0)).unwrap();
    let d = eigendecompose(&h).unwrap();
    assert!(d.reconstruction_residual(&h) < 1e-10);
    assert!(d.unitarity_residual() < 1e-10);
    assert!(d.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn non_hermitian_rejected() {
    let mut m = DMatrix::from_element(2, 2, Complex64::new(0.0, 0.0));
    m[(0, 1)] = Complex64::new(1.0, 0.0);
    assert!(HermitianOperator::new(m).is_err());
}

#[test]
fn two_qubit_spectrum_matches_closed_form() {
    for &(wa, wp, j, g) in &[(0.04, 1.0, 0.05, 0.03), (1.0, 1.0, 0.35, 0.15), (2.0, 1.0, -0.3, 0.2)] {
        let cf = two_qubit_closed_form(wa, wp, j, g);
        let d = eigendecompose(&build_hamiltonian(&cf.spec().unwrap())).unwrap();
        let mut want = [-cf.omega_s, -cf.eta, cf.eta, cf.omega_s];
        want.sort_by(f64::total_cmp);
        for (got, want) in d.eigenvalues().iter().zip(want) {
            assert!((got - want).abs() < 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn hamiltonian_hermitian_and_conserves_magnetization(spec in spec_strategy()) {
        let h = build_hamiltonian(&spec);
        prop_assert!(h.hermiticity_error() < 1e-12);
        prop_assert!(h.commutator_norm(&total_sigma_z(spec.n_qubits())) < 1e-12);
    }

    #[test]
    fn closed_form_orderings(
        wa in 0.001f64..3.0, wp in 0.001f64..3.0, j in -1.0f64..1.0, g in -1.0f64..1.0,
    ) {
        let cf = two_qubit_closed_form(wa, wp, j, g);
        prop_assert!(cf.eta >= cf.omega_d.abs());
        prop_assert!(cf.omega_plus >= cf.omega_minus);
        prop_assert!((cf.omega_plus + cf.omega_minus - 2.0 * cf.omega_s).abs() < 1e-12);
        prop_assert!((cf.sin2_theta + cf.cos2_theta - 1.0).abs() < 1e-12);
        prop_assert!((cf.theta.sin().powi(2) - cf.sin2_theta).abs() < 1e-9);
        prop_assert!(cf.delta > 0.0);
    }
}
