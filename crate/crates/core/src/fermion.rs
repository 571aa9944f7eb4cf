//! Free-fermion picture of the chain.
//!
//! After a Jordan-Wigner transform the chain is a hopping problem
//! `H = sum_ij c_i^dagger M_ij c_j` (up to the constant `-sum_i w_i / 2`),
//! with `M` the `N x N` tridiagonal matrix below and spin up mapped to an
//! occupied site. Diagonalizing `M = U diag(E) U^dagger` gives independent
//! modes, so the probe occupation is a weighted sum of Fermi functions,
//! `p = sum_l |U_{N,l}|^2 / (1 + e^{E_l / T})`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::chain::{ChainSpec, ParameterSelector};
use crate::error::{check_temperature, Error, Result};
use crate::numeric::{fermi, fermi_variance, softplus};
use crate::tridiag::hermitian_tridiagonal_eigen;

/// `M_ii = w_i`, `M_{i,i+1} = 2 (J_i + i g_i)`, `M_{i+1,i} = 2 (J_i - i g_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MMatrix {
    diagonal: Vec<f64>,
    upper: Vec<Complex64>,
}

impl MMatrix {
    pub fn dimension(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    /// `M_{i,i+1}` for `i = 0..N-1`.
    pub fn upper(&self) -> &[Complex64] {
        &self.upper
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        if row == col {
            Complex64::new(self.diagonal[row], 0.0)
        } else if col == row + 1 {
            self.upper[row]
        } else if row == col + 1 {
            self.upper[col].conj()
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let n = self.dimension();
        DMatrix::from_fn(n, n, |r, c| self.entry(r, c))
    }
}

pub fn build_m_matrix(spec: &ChainSpec) -> MMatrix {
    let upper = spec
        .xx_couplings()
        .iter()
        .zip(spec.dm_couplings())
        .map(|(&j, &g)| Complex64::new(2.0 * j, 2.0 * g))
        .collect();
    MMatrix { diagonal: spec.omegas().to_vec(), upper }
}

/// Single-particle energies and how much of each mode sits on the probe.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionSpectrum {
    energies: Vec<f64>,
    probe_weights: Vec<f64>,
    modes: DMatrix<Complex64>,
}

impl TransitionSpectrum {
    /// Ascending.
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// `|U_{N,l}|^2`, aligned with [`Self::energies`].
    pub fn probe_weights(&self) -> &[f64] {
        &self.probe_weights
    }

    /// The unitary `U`; column `l` is the mode with energy `E_l`.
    pub fn modes(&self) -> &DMatrix<Complex64> {
        &self.modes
    }

    /// Probe spin-down population `sum_l w_l / (1 + e^{-E_l/T})`.
    pub fn probe_depletion(&self, t: f64) -> Result<f64> {
        check_temperature(t)?;
        Ok(self.weighted(|e| fermi(-e / t)))
    }

    fn weighted(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.energies.iter().zip(&self.probe_weights).map(|(&e, &w)| w * f(e)).sum()
    }
}

pub fn transition_spectrum(m: &MMatrix) -> Result<TransitionSpectrum> {
    let n = m.dimension();
    let eig = hermitian_tridiagonal_eigen(&m.diagonal, &m.upper)
        .ok_or(Error::EigenSolver { dimension: n })?;
    let probe_weights = eig.vectors[n - 1].iter().map(|z| z.norm_sqr()).collect();
    let modes = DMatrix::from_fn(n, n, |r, c| eig.vectors[r][c]);
    Ok(TransitionSpectrum { energies: eig.values, probe_weights, modes })
}

/// `ln Z = sum_l ln(1 + e^{-E_l / T})`, without the constant energy offset.
pub fn partition_function(spectrum: &TransitionSpectrum, t: f64) -> Result<f64> {
    check_temperature(t)?;
    Ok(spectrum.energies.iter().map(|&e| softplus(-e / t)).sum())
}

pub fn fermionic_probe_population(spectrum: &TransitionSpectrum, t: f64) -> Result<f64> {
    check_temperature(t)?;
    Ok(spectrum.weighted(|e| fermi(e / t)))
}

/// `dp/dT = sum_l w_l (E_l / T^2) f_l (1 - f_l)`.
pub fn fermionic_probe_population_derivative(spectrum: &TransitionSpectrum, t: f64) -> Result<f64> {
    check_temperature(t)?;
    Ok(spectrum.weighted(|e| e / (t * t) * fermi_variance(e / t)))
}

/// Spectra along a one-parameter family of chains.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionTable {
    pub parameter: ParameterSelector,
    pub values: Vec<f64>,
    /// `energies[k]` is the ascending spectrum at `values[k]`.
    pub energies: Vec<Vec<f64>>,
}

impl TransitionTable {
    /// Energies of branch `l` across the sweep.
    pub fn branch(&self, l: usize) -> Vec<f64> {
        self.energies.iter().map(|row| row[l]).collect()
    }
}

pub fn transitions_vs_parameter(
    spec: &ChainSpec,
    parameter: ParameterSelector,
    grid: &[f64],
) -> Result<TransitionTable> {
    spec.parameter(parameter)?;
    let energies = grid
        .iter()
        .map(|&v| {
            let s = spec.with_parameter(parameter, v)?;
            Ok(transition_spectrum(&build_m_matrix(&s))?.energies)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TransitionTable { parameter, values: grid.to_vec(), energies })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::two_qubit_closed_form;

    #[test]
    fn two_qubit_m_matrix() {
        let spec = ChainSpec::two_qubit(0.04, 1.0, 0.05, 0.03).unwrap();
        let m = build_m_matrix(&spec).to_dense();
        assert_eq!(m[(0, 0)], Complex64::new(0.04, 0.0));
        assert_eq!(m[(1, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(m[(0, 1)], Complex64::new(0.1, 0.06));
        assert_eq!(m[(1, 0)], Complex64::new(0.1, -0.06));
    }

    #[test]
    fn decoupled_is_diagonal() {
        let spec = ChainSpec::new(vec![0.3, 0.2, 1.0], vec![0.0; 2], vec![0.0; 2]).unwrap();
        let m = build_m_matrix(&spec);
        for r in 0..3 {
            for c in 0..3 {
                if r != c {
                    assert_eq!(m.entry(r, c), Complex64::new(0.0, 0.0));
                }
            }
        }
        let s = transition_spectrum(&m).unwrap();
        assert_eq!(s.energies(), &[0.2, 0.3, 1.0]);
        assert_eq!(s.probe_weights(), &[0.0, 0.0, 1.0]);
        let p = fermionic_probe_population(&s, 0.5).unwrap();
        assert!((p - 1.0 / (1.0 + 2f64.exp())).abs() < 1e-15);
    }

    #[test]
    fn two_qubit_spectrum_is_omega_pm() {
        let cf = two_qubit_closed_form(0.04, 1.0, 0.05, 0.03);
        let s = transition_spectrum(&build_m_matrix(&cf.spec().unwrap())).unwrap();
        assert!((s.energies()[0] - cf.omega_minus).abs() < 1e-12);
        assert!((s.energies()[1] - cf.omega_plus).abs() < 1e-12);
        assert!((s.probe_weights()[0] - cf.cos2_theta).abs() < 1e-12);
        assert!((s.probe_weights()[1] - cf.sin2_theta).abs() < 1e-12);
    }

    #[test]
    fn log_partition_limits() {
        let s = TransitionSpectrum {
            energies: vec![0.0],
            probe_weights: vec![1.0],
            modes: DMatrix::identity(1, 1),
        };
        assert!((partition_function(&s, 0.3).unwrap() - 2f64.ln()).abs() < 1e-15);
        let spec = ChainSpec::new(vec![0.1, 0.5, 1.0], vec![0.1, 0.2], vec![0.0, 0.3]).unwrap();
        let s = transition_spectrum(&build_m_matrix(&spec)).unwrap();
        let hot = partition_function(&s, 1e8).unwrap();
        assert!((hot - 3.0 * 2f64.ln()).abs() < 1e-7);
        assert!(partition_function(&s, 0.0).is_err());
    }

    #[test]
    fn weights_sum_to_one() {
        let spec = ChainSpec::new(vec![0.004, 0.04, 0.4, 1.0], vec![0.006, 0.06, 0.4], vec![0.004, 0.06, 0.4])
            .unwrap();
        let s = transition_spectrum(&build_m_matrix(&spec)).unwrap();
        assert!((s.probe_weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        for &t in &[1e-3, 0.1, 10.0] {
            let p = fermionic_probe_population(&s, t).unwrap();
            let q = s.probe_depletion(t).unwrap();
            assert!((p + q - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sweep_without_couplings_is_flat() {
        let spec = ChainSpec::new(vec![0.3, 0.7, 1.0], vec![0.0; 2], vec![0.0; 2]).unwrap();
        let table = transitions_vs_parameter(&spec, ParameterSelector::Dm(2), &[0.0]).unwrap();
        assert_eq!(table.energies[0], vec![0.3, 0.7, 1.0]);
        let table =
            transitions_vs_parameter(&spec, ParameterSelector::Omega(1), &[0.1, 0.2, 0.5]).unwrap();
        assert_eq!(table.branch(0), vec![0.1, 0.2, 0.5]);
        assert!(transitions_vs_parameter(&spec, ParameterSelector::Dm(3), &[0.1]).is_err());
    }
}
