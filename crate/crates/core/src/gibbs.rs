//! Exact diagonalization: Gibbs state, probe reduction and its temperature
//! derivative, plus the closed-form two-qubit thermal state.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::chain::{build_hamiltonian, ChainSpec, HermitianOperator, TwoQubitClosedForm};
use crate::error::{check_temperature, Error, Result};

type Block = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Eigenvalues ascending, eigenvectors as the columns of a unitary.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<Complex64>,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<Complex64> {
        &self.eigenvectors
    }

    pub fn dimension(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `max |H - V diag(E) V^dagger|`.
    pub fn reconstruction_residual(&self, h: &HermitianOperator) -> f64 {
        let diag = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            self.dimension(),
            self.eigenvalues.iter().map(|&e| Complex64::new(e, 0.0)),
        ));
        let rebuilt = &self.eigenvectors * diag * self.eigenvectors.adjoint();
        (h.matrix() - rebuilt).iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// `max |V^dagger V - I|`.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.dimension();
        let gram = self.eigenvectors.adjoint() * &self.eigenvectors;
        (gram - DMatrix::<Complex64>::identity(n, n)).iter().fold(0.0, |m, z| m.max(z.norm()))
    }
}

pub fn eigendecompose(h: &HermitianOperator) -> Result<SpectralDecomposition> {
    let n = h.dimension();
    let eig = h
        .matrix()
        .clone()
        .try_symmetric_eigen(f64::EPSILON, 1000 * n.max(1))
        .ok_or(Error::EigenSolver { dimension: n })?;
    if eig.eigenvalues.iter().any(|e| !e.is_finite()) {
        return Err(Error::EigenSolver { dimension: n });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let eigenvectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(SpectralDecomposition { eigenvalues, eigenvectors })
}

/// Boltzmann weights `lambda_k` over a decomposition.
#[derive(Debug, Clone)]
pub struct GibbsState<'a> {
    decomposition: &'a SpectralDecomposition,
    temperature: f64,
    weights: Vec<f64>,
    log_partition: f64,
}

impl<'a> GibbsState<'a> {
    pub fn decomposition(&self) -> &'a SpectralDecomposition {
        self.decomposition
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `ln Z` with `Z = sum_k exp(-E_k / T)`.
    pub fn log_partition(&self) -> f64 {
        self.log_partition
    }

    /// `<H>`.
    pub fn mean_energy(&self) -> f64 {
        self.weights.iter().zip(&self.decomposition.eigenvalues).map(|(w, e)| w * e).sum()
    }

    /// `rho = V diag(lambda) V^dagger`.
    pub fn density_matrix(&self) -> DMatrix<Complex64> {
        let v = &self.decomposition.eigenvectors;
        let mut scaled = v.clone();
        for (k, &w) in self.weights.iter().enumerate() {
            scaled.column_mut(k).scale_mut(w);
        }
        scaled * v.adjoint()
    }
}

/// Weights shifted by the ground energy so that no exponent is positive.
pub fn gibbs_weights(decomp: &SpectralDecomposition, t: f64) -> Result<GibbsState<'_>> {
    check_temperature(t)?;
    let (weights, log_partition) = boltzmann(&decomp.eigenvalues, t);
    Ok(GibbsState { decomposition: decomp, temperature: t, weights, log_partition })
}

fn boltzmann(energies: &[f64], t: f64) -> (Vec<f64>, f64) {
    let e0 = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let mut weights: Vec<f64> = energies.iter().map(|&e| (-(e - e0) / t).exp()).collect();
    let z: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= z);
    (weights, -e0 / t + z.ln())
}

/// Traces out every qubit but the last (least significant) one.
pub fn partial_trace_to_probe(rho: &DMatrix<Complex64>) -> Block {
    let mut out = [[ZERO; 2]; 2];
    for anc in 0..rho.nrows() / 2 {
        for a in 0..2 {
            for b in 0..2 {
                out[a][b] += rho[(2 * anc + a, 2 * anc + b)];
            }
        }
    }
    out
}

/// Reduced probe state; index 0 is spin up.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeState {
    /// Spin-up (excited) population.
    pub p: f64,
    /// Spin-down population, accumulated separately so it keeps full relative
    /// precision when `p` is close to 1.
    pub p_down: f64,
    /// `<up| rho_p |down>`.
    pub coherence: Complex64,
    pub coherence_magnitude: f64,
}

impl ProbeState {
    fn from_block(block: &Block) -> Self {
        let coherence = block[0][1];
        Self {
            p: block[0][0].re.clamp(0.0, 1.0),
            p_down: block[1][1].re.clamp(0.0, 1.0),
            coherence,
            coherence_magnitude: coherence.norm(),
        }
    }

    pub fn trace(&self) -> f64 {
        self.p + self.p_down
    }

    /// Smaller eigenvalue of the 2x2 reduced matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        let mean = 0.5 * (self.p + self.p_down);
        let half = 0.5 * (self.p - self.p_down);
        mean - (half * half + self.coherence.norm_sqr()).sqrt()
    }
}

/// Full Gibbs state, then partial trace over the ancillas.
pub fn probe_state(spec: &ChainSpec, t: f64) -> Result<ProbeState> {
    check_temperature(t)?;
    let decomp = eigendecompose(&build_hamiltonian(spec))?;
    let gibbs = gibbs_weights(&decomp, t)?;
    Ok(ProbeState::from_block(&partial_trace_to_probe(&gibbs.density_matrix())))
}

pub fn probe_population_derivative(spec: &ChainSpec, t: f64) -> Result<f64> {
    check_temperature(t)?;
    Ok(ThermalProbe::new(spec)?.at(t)?.dp_dt)
}

/// Probe observables and their temperature derivatives at one temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbePoint {
    pub temperature: f64,
    pub state: ProbeState,
    /// `dp/dT`; the spin-down population moves by exactly `-dp/dT`.
    pub dp_dt: f64,
    /// `d<up|rho_p|down>/dT`.
    pub dcoherence_dt: Complex64,
}

impl ProbePoint {
    pub fn sigma_z(&self) -> f64 {
        self.state.p - self.state.p_down
    }

    pub fn sigma_x(&self) -> f64 {
        2.0 * self.state.coherence.re
    }

    pub fn dsigma_z_dt(&self) -> f64 {
        2.0 * self.dp_dt
    }

    pub fn dsigma_x_dt(&self) -> f64 {
        2.0 * self.dcoherence_dt.re
    }
}

/// Diagonalizes once and keeps, for every eigenvector `k`, its reduced 2x2
/// probe block `B_k`. Then `rho_p(T) = sum_k lambda_k B_k` and, with
/// `d lambda_k / dT = lambda_k (E_k - <H>) / T^2`,
/// `d rho_p / dT = sum_k lambda_k (E_k - E_0) (B_k - rho_p) / T^2`
/// (the shift by `E_0` keeps the sum free of large cancelling terms).
#[derive(Debug, Clone)]
pub struct ThermalProbe {
    energies: Vec<f64>,
    blocks: Vec<Block>,
}

impl ThermalProbe {
    pub fn new(spec: &ChainSpec) -> Result<Self> {
        Ok(Self::from_decomposition(&eigendecompose(&build_hamiltonian(spec))?))
    }

    pub fn from_decomposition(decomp: &SpectralDecomposition) -> Self {
        let v = &decomp.eigenvectors;
        let blocks = (0..decomp.dimension())
            .map(|k| {
                let col = v.column(k);
                let mut b = [[ZERO; 2]; 2];
                for anc in 0..col.len() / 2 {
                    let amp = [col[2 * anc], col[2 * anc + 1]];
                    for r in 0..2 {
                        for c in 0..2 {
                            b[r][c] += amp[r] * amp[c].conj();
                        }
                    }
                }
                b
            })
            .collect();
        Self { energies: decomp.eigenvalues.clone(), blocks }
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Probe-up weight of each eigenvector.
    pub fn up_weights(&self) -> Vec<f64> {
        self.blocks.iter().map(|b| b[0][0].re).collect()
    }

    pub fn at(&self, t: f64) -> Result<ProbePoint> {
        check_temperature(t)?;
        let (weights, _) = boltzmann(&self.energies, t);
        let mut rho = [[ZERO; 2]; 2];
        for (w, b) in weights.iter().zip(&self.blocks) {
            for r in 0..2 {
                for c in 0..2 {
                    rho[r][c] += b[r][c] * *w;
                }
            }
        }
        let e0 = self.energies[0];
        let t2 = t * t;
        let mut dp = 0.0;
        let mut dc = ZERO;
        for ((w, b), e) in weights.iter().zip(&self.blocks).zip(&self.energies) {
            let f = w * (e - e0) / t2;
            dp += f * (b[0][0].re - rho[0][0].re);
            dc += (b[0][1] - rho[0][1]) * f;
        }
        Ok(ProbePoint {
            temperature: t,
            state: ProbeState::from_block(&rho),
            dp_dt: dp,
            dcoherence_dt: dc,
        })
    }

    /// `sum_k lambda_k (q_k - q_0)`: the population above the ground-state
    /// value. Smooth in `T` with no constant offset, which makes it a good
    /// target for finite differences.
    pub fn excess_population(&self, t: f64) -> Result<f64> {
        check_temperature(t)?;
        let (weights, _) = boltzmann(&self.energies, t);
        let q0 = self.blocks[0][0][0].re;
        Ok(weights.iter().zip(&self.blocks).map(|(w, b)| w * (b[0][0].re - q0)).sum())
    }
}

/// Two-qubit Gibbs state in the `|00>, |01>, |10>, |11>` basis (first label
/// the ancilla, `0` = up). Only `|01>` and `|10>` are coupled, through `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitThermalState {
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    pub d4: f64,
    /// `<01| rho |10>`.
    pub c: Complex64,
}

impl TwoQubitThermalState {
    pub fn probe_population(&self) -> f64 {
        self.d1 + self.d3
    }

    pub fn matrix(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::from_element(4, 4, ZERO);
        m[(0, 0)] = Complex64::new(self.d1, 0.0);
        m[(1, 1)] = Complex64::new(self.d2, 0.0);
        m[(2, 2)] = Complex64::new(self.d3, 0.0);
        m[(3, 3)] = Complex64::new(self.d4, 0.0);
        m[(1, 2)] = self.c;
        m[(2, 1)] = self.c.conj();
        m
    }
}

/// `(E, probe-up weight)` for the four levels, in the order
/// `+omega_s, +eta, -eta, -omega_s`.
fn two_qubit_levels(cf: &TwoQubitClosedForm) -> [(f64, f64); 4] {
    [
        (cf.omega_s, 1.0),
        (cf.eta, cf.sin2_theta),
        (-cf.eta, cf.cos2_theta),
        (-cf.omega_s, 0.0),
    ]
}

/// Weights of the four levels divided by `exp(max(eta, omega_s) / T)`.
fn two_qubit_scaled_weights(cf: &TwoQubitClosedForm, t: f64) -> ([f64; 4], f64) {
    let top = cf.eta.max(cf.omega_s);
    let levels = two_qubit_levels(cf);
    let w = levels.map(|(e, _)| (-(e + top) / t).exp());
    let z = w.iter().sum();
    (w, z)
}

pub fn two_qubit_thermal_state(cf: &TwoQubitClosedForm, t: f64) -> Result<TwoQubitThermalState> {
    check_temperature(t)?;
    let ([w_s_plus, w_eta_plus, w_eta_minus, w_s_minus], z) = two_qubit_scaled_weights(cf, t);
    let d1 = w_s_plus / z;
    let d4 = w_s_minus / z;
    let d3 = (cf.sin2_theta * w_eta_plus + cf.cos2_theta * w_eta_minus) / z;
    let d2 = (cf.cos2_theta * w_eta_plus + cf.sin2_theta * w_eta_minus) / z;
    // sinh(eta/T) / (2 chi), rescaled like the weights
    let sinh_scaled = 0.5 * (w_eta_minus - w_eta_plus);
    let c = cf.coupling_phase() * (cf.sin_2theta() * sinh_scaled / z);
    Ok(TwoQubitThermalState { d1, d2, d3, d4, c })
}

pub fn two_qubit_population(cf: &TwoQubitClosedForm, t: f64) -> Result<f64> {
    Ok(two_qubit_thermal_state(cf, t)?.probe_population())
}

/// Derivative of the closed-form probe population.
pub fn two_qubit_population_derivative(cf: &TwoQubitClosedForm, t: f64) -> Result<f64> {
    check_temperature(t)?;
    let levels = two_qubit_levels(cf);
    let (w, z) = two_qubit_scaled_weights(cf, t);
    let p: f64 = levels.iter().zip(&w).map(|((_, q), w)| q * w).sum::<f64>() / z;
    let e0 = -cf.eta.max(cf.omega_s);
    Ok(levels
        .iter()
        .zip(&w)
        .map(|((e, q), w)| w / z * (e - e0) * (q - p))
        .sum::<f64>()
        / (t * t))
}
