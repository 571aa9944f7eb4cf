//! Chain parameterization and the spin Hamiltonian in the computational basis.
//!
//! Basis convention: qubit 1 is the most significant tensor factor and the
//! probe (qubit `N`) the least significant. Bit value `0` is spin up
//! (`sigma_z = +1`), so basis index `s` has qubit `i` up iff bit `N - i` of
//! `s` is clear.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense matrices are capped at `2^12 = 4096` rows.
pub const MAX_QUBITS: usize = 12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Frequencies and nearest-neighbour couplings of an open chain.
///
/// `omegas[i]` is the frequency of qubit `i + 1`; the last entry is the probe.
/// `xx_couplings[i]` and `dm_couplings[i]` connect qubits `i + 1` and `i + 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec {
    omegas: Vec<f64>,
    xx_couplings: Vec<f64>,
    dm_couplings: Vec<f64>,
}

impl ChainSpec {
    pub fn new(omegas: Vec<f64>, xx_couplings: Vec<f64>, dm_couplings: Vec<f64>) -> Result<Self> {
        let n = omegas.len();
        if n < 2 {
            return Err(Error::InvalidSpec(format!("need at least 2 qubits, got {n}")));
        }
        if n > MAX_QUBITS {
            return Err(Error::InvalidSpec(format!(
                "at most {MAX_QUBITS} qubits are supported, got {n}"
            )));
        }
        if xx_couplings.len() != n - 1 || dm_couplings.len() != n - 1 {
            return Err(Error::InvalidSpec(format!(
                "{n} qubits need {} couplings of each kind, got {} XX and {} DM",
                n - 1,
                xx_couplings.len(),
                dm_couplings.len()
            )));
        }
        if let Some(w) = omegas.iter().find(|w| !w.is_finite() || **w <= 0.0) {
            return Err(Error::InvalidSpec(format!(
                "qubit frequencies must be positive and finite, got {w}"
            )));
        }
        if xx_couplings.iter().chain(&dm_couplings).any(|c| !c.is_finite()) {
            return Err(Error::InvalidSpec("couplings must be finite".into()));
        }
        Ok(Self { omegas, xx_couplings, dm_couplings })
    }

    /// Two-qubit chain `(ancilla, probe)`.
    pub fn two_qubit(omega_a: f64, omega_p: f64, j: f64, g: f64) -> Result<Self> {
        Self::new(vec![omega_a, omega_p], vec![j], vec![g])
    }

    pub fn n_qubits(&self) -> usize {
        self.omegas.len()
    }

    pub fn dimension(&self) -> usize {
        1 << self.n_qubits()
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    pub fn xx_couplings(&self) -> &[f64] {
        &self.xx_couplings
    }

    pub fn dm_couplings(&self) -> &[f64] {
        &self.dm_couplings
    }

    pub fn probe_frequency(&self) -> f64 {
        self.omegas[self.n_qubits() - 1]
    }

    pub fn parameter(&self, selector: ParameterSelector) -> Result<f64> {
        let (values, index) = self.slot(selector)?;
        Ok(values[index])
    }

    /// Copy of the spec with one parameter replaced (and re-validated).
    pub fn with_parameter(&self, selector: ParameterSelector, value: f64) -> Result<Self> {
        self.slot(selector)?;
        let mut omegas = self.omegas.clone();
        let mut xx = self.xx_couplings.clone();
        let mut dm = self.dm_couplings.clone();
        match selector {
            ParameterSelector::Omega(i) => omegas[i - 1] = value,
            ParameterSelector::Xx(i) => xx[i - 1] = value,
            ParameterSelector::Dm(i) => dm[i - 1] = value,
        }
        Self::new(omegas, xx, dm)
    }

    fn slot(&self, selector: ParameterSelector) -> Result<(&[f64], usize)> {
        let (values, index) = match selector {
            ParameterSelector::Omega(i) => (self.omegas.as_slice(), i),
            ParameterSelector::Xx(i) => (self.xx_couplings.as_slice(), i),
            ParameterSelector::Dm(i) => (self.dm_couplings.as_slice(), i),
        };
        if index == 0 || index > values.len() {
            return Err(Error::BadSelector(selector.to_string()));
        }
        Ok((values, index - 1))
    }
}

/// Addresses one chain parameter; indices are 1-based like the qubit labels.
///
/// Parses from `omega<i>` (or `w<i>`), `J<i>` and `g<i>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParameterSelector {
    Omega(usize),
    Xx(usize),
    Dm(usize),
}

impl fmt::Display for ParameterSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Omega(i) => write!(f, "omega{i}"),
            Self::Xx(i) => write!(f, "J{i}"),
            Self::Dm(i) => write!(f, "g{i}"),
        }
    }
}

impl FromStr for ParameterSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::BadSelector(s.to_string());
        let (ctor, digits): (fn(usize) -> Self, &str) = if let Some(rest) = s.strip_prefix("omega") {
            (Self::Omega, rest)
        } else if let Some(rest) = s.strip_prefix('w') {
            (Self::Omega, rest)
        } else if let Some(rest) = s.strip_prefix('J') {
            (Self::Xx, rest)
        } else if let Some(rest) = s.strip_prefix('g') {
            (Self::Dm, rest)
        } else {
            return Err(bad());
        };
        let digits = digits.trim_start_matches('_');
        let index: usize = digits.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(ctor(index))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    fn matrix(self) -> [[Complex64; 2]; 2] {
        match self {
            Axis::X => [[ZERO, ONE], [ONE, ZERO]],
            Axis::Y => [[ZERO, -I], [I, ZERO]],
            Axis::Z => [[ONE, ZERO], [ZERO, -ONE]],
        }
    }
}

/// A dense Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: DMatrix<Complex64>,
}

impl HermitianOperator {
    /// Wraps `matrix` after checking Hermiticity to `1e-12` entrywise.
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidSpec("operator must be square".into()));
        }
        let op = Self { matrix };
        if op.hermiticity_error() > 1e-12 {
            return Err(Error::InvalidSpec("operator is not Hermitian".into()));
        }
        Ok(op)
    }

    pub(crate) fn new_unchecked(matrix: DMatrix<Complex64>) -> Self {
        Self { matrix }
    }

    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    /// `max |H_ij - conj(H_ji)|`.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dimension();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Largest entry magnitude of `[self, other]`.
    pub fn commutator_norm(&self, other: &HermitianOperator) -> f64 {
        let c = &self.matrix * &other.matrix - &other.matrix * &self.matrix;
        c.iter().fold(0.0, |m, z| m.max(z.norm()))
    }
}

/// `sigma^axis` acting on `site` (1-based) of an `n_qubits` chain.
pub fn pauli_at(site: usize, axis: Axis, n_qubits: usize) -> Result<HermitianOperator> {
    if site == 0 || site > n_qubits {
        return Err(Error::SiteOutOfRange { site, n_qubits });
    }
    if n_qubits > MAX_QUBITS {
        return Err(Error::InvalidSpec(format!("at most {MAX_QUBITS} qubits are supported")));
    }
    let pauli = axis.matrix();
    let single = DMatrix::from_fn(2, 2, |r, c| pauli[r][c]);
    let identity = DMatrix::<Complex64>::identity(2, 2);
    let mut out = DMatrix::from_element(1, 1, ONE);
    for q in 1..=n_qubits {
        let factor = if q == site { &single } else { &identity };
        out = out.kronecker(factor);
    }
    Ok(HermitianOperator::new_unchecked(out))
}

/// Total magnetization `sum_i sigma^z_i`, diagonal in the computational basis.
pub fn total_sigma_z(n_qubits: usize) -> HermitianOperator {
    let dim = 1usize << n_qubits;
    let diag = (0..dim).map(|s| {
        let down = (s as u32).count_ones() as f64;
        Complex64::new(n_qubits as f64 - 2.0 * down, 0.0)
    });
    HermitianOperator::new_unchecked(DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        dim, diag,
    )))
}

/// Builds
/// `H = sum_i (w_i/2) Z_i + sum_i J_i (X_i X_{i+1} + Y_i Y_{i+1})
///    + sum_i g_i (X_i Y_{i+1} - Y_i X_{i+1})`.
///
/// The hopping terms only exchange an up/down pair on neighbouring sites:
/// `<..0_i 1_{i+1}..| H |..1_i 0_{i+1}..> = 2 (J_i + i g_i)`.
pub fn build_hamiltonian(spec: &ChainSpec) -> HermitianOperator {
    let n = spec.n_qubits();
    let dim = spec.dimension();
    let mut h = DMatrix::from_element(dim, dim, ZERO);
    let bit = |site: usize| 1usize << (n - site);

    for s in 0..dim {
        let diag: f64 = (1..=n)
            .map(|site| {
                let z = if s & bit(site) == 0 { 1.0 } else { -1.0 };
                0.5 * spec.omegas[site - 1] * z
            })
            .sum();
        h[(s, s)] = Complex64::new(diag, 0.0);
    }

    for site in 1..n {
        let hop = Complex64::new(2.0 * spec.xx_couplings[site - 1], 2.0 * spec.dm_couplings[site - 1]);
        let (left, right) = (bit(site), bit(site + 1));
        for s in 0..dim {
            // left down, right up -> left up, right down
            if s & left != 0 && s & right == 0 {
                let target = (s & !left) | right;
                h[(target, s)] += hop;
                h[(s, target)] += hop.conj();
            }
        }
    }
    HermitianOperator::new_unchecked(h)
}

/// Closed-form spectral data of the two-qubit chain `(ancilla, probe)`.
///
/// The Hamiltonian has eigenvalues `+-omega_s` (both spins aligned) and
/// `+-eta` (one excitation shared between the qubits). `omega_d` is
/// `(omega_p - omega_a) / 2`.
///
/// The mixing angle is measured with the opposite detuning,
/// `delta_mix = (omega_a - omega_p) / 2 = -omega_d`:
/// `sin(theta) = (delta_mix - eta) / Delta`,
/// `Delta = sqrt(4J^2 + 4g^2 + (delta_mix - eta)^2)`. With this sign,
/// `cos^2(theta)` is the probe-up weight of the `-eta` eigenvector, which is
/// what the thermal populations below require; with `+omega_d` the populations
/// disagree with exact diagonalization whenever `omega_a != omega_p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitClosedForm {
    pub omega_a: f64,
    pub omega_p: f64,
    pub xx: f64,
    pub dm: f64,
    pub omega_s: f64,
    pub omega_d: f64,
    pub eta: f64,
    pub delta: f64,
    pub theta: f64,
    pub omega_minus: f64,
    pub omega_plus: f64,
    /// `sin^2(theta)`, computed without cancellation.
    pub sin2_theta: f64,
    /// `cos^2(theta)`, computed without cancellation.
    pub cos2_theta: f64,
}

impl TwoQubitClosedForm {
    /// `chi = cosh(eta/T) + cosh(omega_s/T)`. Overflows to infinity once
    /// `max(eta, omega_s) / T` exceeds ~710; the thermal code works with
    /// rescaled quantities instead.
    pub fn chi_at(&self, t: f64) -> f64 {
        (self.eta / t).cosh() + (self.omega_s / t).cosh()
    }

    /// `cos(2 theta) = cos^2 - sin^2`.
    pub fn cos_2theta(&self) -> f64 {
        self.cos2_theta - self.sin2_theta
    }

    /// `sin(2 theta)`; non-positive since `theta` lies in `[-pi/2, 0]`.
    pub fn sin_2theta(&self) -> f64 {
        (2.0 * self.theta).sin()
    }

    /// Unit phase of the hopping amplitude `J + i g` (1 when both vanish).
    pub fn coupling_phase(&self) -> Complex64 {
        let z = Complex64::new(self.xx, self.dm);
        let r = z.norm();
        if r == 0.0 {
            ONE
        } else {
            z / r
        }
    }

    pub fn spec(&self) -> Result<ChainSpec> {
        ChainSpec::two_qubit(self.omega_a, self.omega_p, self.xx, self.dm)
    }
}

pub fn two_qubit_closed_form(omega_a: f64, omega_p: f64, j: f64, g: f64) -> TwoQubitClosedForm {
    let omega_s = 0.5 * (omega_p + omega_a);
    let omega_d = 0.5 * (omega_p - omega_a);
    let hop2 = 4.0 * (j * j + g * g);
    let eta = (omega_d * omega_d + hop2).sqrt();

    // delta_mix - eta = -(omega_d + eta); rationalize when omega_d < 0
    let lean = if omega_d >= 0.0 {
        omega_d + eta
    } else if eta - omega_d > 0.0 {
        hop2 / (eta - omega_d)
    } else {
        0.0
    };
    let delta = (hop2 + lean * lean).sqrt();
    let (theta, sin2_theta, cos2_theta) = if delta == 0.0 {
        (0.0, 0.0, 1.0)
    } else {
        let s = -lean / delta;
        (s.clamp(-1.0, 1.0).asin(), lean * lean / (delta * delta), hop2 / (delta * delta))
    };

    TwoQubitClosedForm {
        omega_a,
        omega_p,
        xx: j,
        dm: g,
        omega_s,
        omega_d,
        eta,
        delta,
        theta,
        omega_minus: omega_s - eta,
        omega_plus: omega_s + eta,
        sin2_theta,
        cos2_theta,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(ChainSpec::new(vec![1.0], vec![], vec![]).is_err());
        assert!(ChainSpec::new(vec![1.0, 1.0], vec![0.1, 0.2], vec![0.1]).is_err());
        assert!(ChainSpec::new(vec![1.0, 0.0], vec![0.1], vec![0.1]).is_err());
        assert!(ChainSpec::new(vec![1.0, -0.5], vec![0.1], vec![0.1]).is_err());
        assert!(ChainSpec::new(vec![1.0, f64::NAN], vec![0.1], vec![0.1]).is_err());
        assert!(ChainSpec::new(vec![1.0, 1.0], vec![f64::INFINITY], vec![0.1]).is_err());
        assert!(ChainSpec::new(vec![1.0; 13], vec![0.0; 12], vec![0.0; 12]).is_err());
        assert!(ChainSpec::new(vec![1.0; 3], vec![0.0; 2], vec![0.0; 2]).is_ok());
    }

    #[test]
    fn selectors_parse_and_apply() {
        let spec = ChainSpec::new(vec![0.04, 0.4, 1.0], vec![0.06, 0.4], vec![0.04, 0.4]).unwrap();
        let g1: ParameterSelector = "g1".parse().unwrap();
        assert_eq!(g1, ParameterSelector::Dm(1));
        assert_eq!("J_2".parse::<ParameterSelector>().unwrap(), ParameterSelector::Xx(2));
        assert_eq!("omega3".parse::<ParameterSelector>().unwrap(), ParameterSelector::Omega(3));
        assert_eq!("w1".parse::<ParameterSelector>().unwrap(), ParameterSelector::Omega(1));
        assert!("x1".parse::<ParameterSelector>().is_err());
        assert!("g0".parse::<ParameterSelector>().is_err());
        assert!("g".parse::<ParameterSelector>().is_err());

        let bumped = spec.with_parameter(g1, 0.1).unwrap();
        assert_eq!(bumped.dm_couplings(), &[0.1, 0.4]);
        assert_eq!(spec.parameter(ParameterSelector::Omega(2)).unwrap(), 0.4);
        assert!(matches!(spec.parameter(ParameterSelector::Xx(3)), Err(Error::BadSelector(_))));
        assert!(spec.with_parameter(ParameterSelector::Omega(1), -1.0).is_err());
        assert_eq!(g1.to_string(), "g1");
    }

    #[test]
    fn single_qubit_sigma_z() {
        let z = pauli_at(1, Axis::Z, 1).unwrap();
        assert_eq!(z.matrix()[(0, 0)], ONE);
        assert_eq!(z.matrix()[(1, 1)], -ONE);
        assert_eq!(z.matrix()[(0, 1)], ZERO);
    }

    #[test]
    fn probe_is_least_significant() {
        let z = pauli_at(2, Axis::Z, 2).unwrap();
        let diag: Vec<f64> = (0..4).map(|i| z.matrix()[(i, i)].re).collect();
        assert_eq!(diag, vec![1.0, -1.0, 1.0, -1.0]);
    }

    #[test]
    fn first_qubit_sigma_x_swaps_blocks() {
        let x = pauli_at(1, Axis::X, 2).unwrap();
        let m = x.matrix();
        for b in 0..2 {
            assert_eq!(m[(b, 2 + b)], ONE);
            assert_eq!(m[(2 + b, b)], ONE);
        }
        assert_eq!(m[(0, 0)], ZERO);
        assert_eq!(m[(0, 1)], ZERO);
    }

    #[test]
    fn pauli_site_out_of_range() {
        assert_eq!(
            pauli_at(0, Axis::X, 3).unwrap_err(),
            Error::SiteOutOfRange { site: 0, n_qubits: 3 }
        );
        assert!(pauli_at(4, Axis::X, 3).is_err());
    }

    #[test]
    fn resonant_noninteracting_pair() {
        let spec = ChainSpec::two_qubit(1.0, 1.0, 0.0, 0.0).unwrap();
        let h = build_hamiltonian(&spec);
        let expected = [1.0, 0.0, 0.0, -1.0];
        for (i, &diag) in expected.iter().enumerate() {
            for j in 0..4 {
                let want = if i == j { diag } else { 0.0 };
                assert!((h.matrix()[(i, j)] - Complex64::new(want, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn quoted_channel_frequencies() {
        let off = two_qubit_closed_form(0.04, 1.0, 0.05, 0.03);
        assert!(close(off.omega_minus, 0.026, 0.001), "{}", off.omega_minus);
        assert!(close(off.omega_plus, 1.013, 0.002), "{}", off.omega_plus);
        let res = two_qubit_closed_form(1.0, 1.0, 0.05, 0.03);
        assert!(close(res.omega_minus, 0.88, 0.01), "{}", res.omega_minus);
        assert!(close(res.omega_plus, 1.11, 0.01), "{}", res.omega_plus);
    }

    #[test]
    fn closed_form_eigenvectors() {
        // kets ordered (|01>, |10>) = (ancilla up, probe up)
        for &(wa, wp, j, g) in &[(0.04, 1.0, 0.05, 0.03), (1.0, 0.3, 0.2, -0.1), (1.0, 1.0, 0.0, 0.4)] {
            let cf = two_qubit_closed_form(wa, wp, j, g);
            let h = build_hamiltonian(&cf.spec().unwrap());
            let hop = Complex64::new(2.0 * j, 2.0 * g);
            let lean = cf.eta + cf.omega_d;
            let plus = [hop / cf.delta, Complex64::new(lean / cf.delta, 0.0)];
            let minus = [Complex64::new(-lean / cf.delta, 0.0), hop.conj() / cf.delta];
            for (v, e) in [(plus, cf.eta), (minus, -cf.eta)] {
                let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
                assert!(close(norm, 1.0, 1e-12));
                for (row, idx) in [(0usize, 1usize), (1, 2)] {
                    let hv = h.matrix()[(idx, 1)] * v[0] + h.matrix()[(idx, 2)] * v[1];
                    assert!((hv - v[row] * e).norm() < 1e-10);
                }
            }
            assert!(close(cf.cos2_theta, (hop.norm() / cf.delta).powi(2), 1e-12));
        }
    }

    #[test]
    fn decoupled_resonant_pair_is_degenerate() {
        let cf = two_qubit_closed_form(1.0, 1.0, 0.0, 0.0);
        assert_eq!(cf.eta, 0.0);
        assert_eq!(cf.omega_minus, 1.0);
        assert_eq!(cf.omega_plus, 1.0);
        assert_eq!(cf.omega_s, 1.0);
        assert_eq!(cf.theta, 0.0);
        assert_eq!(cf.delta, 0.0);
    }

    #[test]
    fn decoupled_off_resonant_angles() {
        // probe above ancilla: the -eta level is ancilla-up/probe-down
        let cf = two_qubit_closed_form(0.5, 1.0, 0.0, 0.0);
        assert!(close(cf.cos2_theta, 0.0, 1e-15));
        assert!(close(cf.theta, -std::f64::consts::FRAC_PI_2, 1e-12));
        // ancilla above probe: degenerate Delta, theta = 0
        let cf = two_qubit_closed_form(1.5, 1.0, 0.0, 0.0);
        assert_eq!(cf.delta, 0.0);
        assert_eq!(cf.theta, 0.0);
        assert_eq!(cf.cos2_theta, 1.0);
    }

    #[test]
    fn ancilla_above_probe_no_cancellation() {
        let cf = two_qubit_closed_form(1.0, 0.04, 1e-9, 0.0);
        let naive_lean = cf.omega_d + cf.eta;
        assert!(cf.sin2_theta > 0.0);
        assert!(naive_lean.abs() < 1e-15 || (cf.sin2_theta - 1.0).abs() > 0.0);
        assert!(close(cf.sin2_theta + cf.cos2_theta, 1.0, 1e-15));
    }
}
