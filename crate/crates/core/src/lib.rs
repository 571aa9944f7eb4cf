//! Thermometry with a probe qubit attached to a chain of ancilla qubits.
//!
//! The chain carries Heisenberg XX and Dzyaloshinskii-Moriya couplings between
//! nearest neighbours; the ancillas thermalize with a sample and the probe
//! (always the last qubit of the chain) is read out. This crate provides two
//! independent routes to the probe's thermal state:
//!
//! - [`gibbs`]: exact diagonalization of the `2^N`-dimensional Hamiltonian,
//!   a Gibbs state and a partial trace down to the probe;
//! - [`fermion`]: the Jordan-Wigner picture, where the chain is a free-fermion
//!   hopping problem described by an `N x N` tridiagonal matrix.
//!
//! On top of those, [`metrology`] evaluates quantum/classical Fisher
//! information and [`peaks`] locates and predicts the temperatures of maximal
//! sensitivity.
//!
//! Units: every energy is measured in units of the probe frequency, and
//! `k_B = hbar = 1`.

pub mod chain;
pub mod error;
pub mod fermion;
pub mod gibbs;
pub mod metrology;
pub mod numeric;
pub mod peaks;
mod tridiag;

pub use chain::{
    build_hamiltonian, pauli_at, two_qubit_closed_form, Axis, ChainSpec, HermitianOperator,
    ParameterSelector, TwoQubitClosedForm,
};
pub use error::{Error, Result};
pub use fermion::{
    build_m_matrix, fermionic_probe_population, fermionic_probe_population_derivative,
    partition_function, transition_spectrum, transitions_vs_parameter, MMatrix,
    TransitionSpectrum, TransitionTable,
};
pub use gibbs::{
    eigendecompose, gibbs_weights, probe_population_derivative, probe_state,
    two_qubit_population, two_qubit_population_derivative, two_qubit_thermal_state, GibbsState,
    ProbeState, SpectralDecomposition, ThermalProbe, TwoQubitThermalState,
};
pub use metrology::{
    cfi_from_population, fisher_point, observable_fisher, population_approximations, qfi_approx,
    qfi_auxiliaries, qfi_exact_two_qubit, qfi_from_population, FisherPoint, Observable,
    PopulationApproximations, QfiApprox, TwoQubitQfiAuxiliaries,
};
pub use peaks::{
    detect_peaks, peak_scale, predict_peaks, solve_peak_equation, Peak, PeakList, PeakPrediction,
};
