//! Fisher information about the temperature carried by the probe.
//!
//! The reduced probe state is diagonal, `diag(p, 1 - p)`, so its quantum
//! Fisher information reduces to `(dp/dT)^2 / (p (1 - p))`. That is also the
//! classical Fisher information of a `sigma_z` readout, which is why all three
//! agree.

use crate::chain::{ChainSpec, TwoQubitClosedForm};
use crate::error::{check_temperature, Error, Result};
use crate::gibbs::{ProbePoint, ThermalProbe};
use crate::numeric::{fermi, fermi_variance, log_add_exp, sech2};

/// QFI of `diag(p, 1 - p)` moving at rate `dp`.
pub fn qfi_from_population(p: f64, dp: f64) -> Result<f64> {
    check_interior(p)?;
    Ok(dp / p * (dp / (1.0 - p)))
}

/// Two-outcome classical Fisher information, summed term by term.
pub fn cfi_from_population(p: f64, dp: f64) -> Result<f64> {
    check_interior(p)?;
    Ok(dp * dp / p + dp * dp / (1.0 - p))
}

fn check_interior(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::BoundaryPopulation(p))
    }
}

/// All Fisher quantities at one temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FisherPoint {
    pub temperature: f64,
    pub qfi: f64,
    pub cfi: f64,
    pub fi_sigma_z: f64,
    pub fi_sigma_x: f64,
    pub population: f64,
    pub population_derivative: f64,
    /// `p` or `1 - p` underflowed to zero; the information values are
    /// reported as 0.
    pub boundary: bool,
}

impl FisherPoint {
    /// `up` and `down` are the two populations, each accurate on its own.
    pub fn from_populations(temperature: f64, up: f64, down: f64, dp: f64) -> Self {
        let mut point = Self {
            temperature,
            qfi: 0.0,
            cfi: 0.0,
            fi_sigma_z: 0.0,
            fi_sigma_x: 0.0,
            population: up,
            population_derivative: dp,
            boundary: !(up > 0.0 && down > 0.0),
        };
        if !point.boundary {
            point.qfi = dp / up * (dp / down);
            point.cfi = dp * dp / up + dp * dp / down;
            // (d<Z>/dT)^2 / Var(Z) with <Z> = up - down, Var = 4 up down
            let dz = 2.0 * dp;
            point.fi_sigma_z = dz / (2.0 * up) * (dz / (2.0 * down));
        }
        point
    }

    fn from_probe(point: &ProbePoint) -> Self {
        let s = &point.state;
        let mut out = Self::from_populations(point.temperature, s.p, s.p_down, point.dp_dt);
        out.fi_sigma_x = sigma_x_fisher(point);
        out
    }
}

fn sigma_x_fisher(point: &ProbePoint) -> f64 {
    let var = 1.0 - point.sigma_x().powi(2);
    if var > 0.0 {
        point.dsigma_x_dt().powi(2) / var
    } else {
        0.0
    }
}

/// Fisher quantities from the exact-diagonalization probe.
pub fn fisher_point(probe: &ThermalProbe, t: f64) -> Result<FisherPoint> {
    Ok(FisherPoint::from_probe(&probe.at(t)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    SigmaZ,
    SigmaX,
}

/// `(d<X>/dT)^2 / Var(X)` for a projective readout of the probe.
pub fn observable_fisher(spec: &ChainSpec, t: f64, observable: Observable) -> Result<f64> {
    let point = ThermalProbe::new(spec)?.at(t)?;
    match observable {
        Observable::SigmaZ => {
            let s = &point.state;
            let var = 4.0 * s.p * s.p_down;
            if var <= 0.0 {
                return Err(Error::ZeroVariance);
            }
            Ok(point.dsigma_z_dt().powi(2) / var)
        }
        Observable::SigmaX => {
            if 1.0 - point.sigma_x().powi(2) <= 0.0 {
                return Err(Error::ZeroVariance);
            }
            Ok(sigma_x_fisher(&point))
        }
    }
}

/// Terms of the closed-form two-qubit QFI.
///
/// `b_term` and `zeta_term` grow like `exp((eta + omega_s) / T)`, so they are
/// stored multiplied by `exp(-log_scale)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitQfiAuxiliaries {
    /// `sinh(eta/T) sinh(omega_s/T) (omega_s cos 2theta - eta)`, scaled.
    pub b_term: f64,
    /// `cosh(eta/T) cosh(omega_s/T) (omega_s - eta cos 2theta)`, scaled.
    pub zeta_term: f64,
    /// `(sinh(omega_s/T) - cos 2theta sinh(eta/T))^2 / chi^2`.
    pub alpha_term: f64,
    /// `(eta + omega_s) / T`.
    pub log_scale: f64,
}

/// `(1 + e^{-2x}) / 2` and `(1 - e^{-2x}) / 2`: `cosh x` and `sinh x` over `e^x`.
fn scaled_cosh_sinh(x: f64) -> (f64, f64) {
    let e = (-2.0 * x).exp();
    (0.5 * (1.0 + e), -0.5 * (-2.0 * x).exp_m1())
}

pub fn qfi_auxiliaries(cf: &TwoQubitClosedForm, t: f64) -> Result<TwoQubitQfiAuxiliaries> {
    check_temperature(t)?;
    let (a, b) = (cf.eta / t, cf.omega_s / t);
    let c2 = cf.cos_2theta();
    let (ca, sa) = scaled_cosh_sinh(a);
    let (cb, sb) = scaled_cosh_sinh(b);
    // divide chi and u by e^{max(a, b)}
    let top = a.max(b);
    let ea = (a - top).exp();
    let eb = (b - top).exp();
    let chi = ca * ea + cb * eb;
    let u = sb * eb - c2 * sa * ea;
    Ok(TwoQubitQfiAuxiliaries {
        b_term: sa * sb * (cf.omega_s * c2 - cf.eta),
        zeta_term: ca * cb * (cf.omega_s - cf.eta * c2),
        alpha_term: (u / chi).powi(2),
        log_scale: a + b,
    })
}

/// Closed-form QFI of the two-qubit probe,
///
/// `F = (B + zeta - eta cos 2theta + omega_s)^2
///      / (T^4 chi^2 [chi^2 - (sinh(omega_s/T) - cos 2theta sinh(eta/T))^2])`,
///
/// evaluated in logarithms. With `a = eta/T`, `b = omega_s/T` the numerator
/// equals `e^{a+b} N` where
/// `N = [cos^2 theta omega_- (1 + e^{-a-b})^2 + sin^2 theta omega_+ (e^{-a} + e^{-b})^2] / 2`,
/// and `chi^2 - u^2 = (chi - u)(chi + u)` splits into two sums of positive
/// exponentials.
pub fn qfi_exact_two_qubit(cf: &TwoQubitClosedForm, t: f64) -> Result<f64> {
    check_temperature(t)?;
    let (a, b) = (cf.eta / t, cf.omega_s / t);
    let c2 = cf.cos_2theta();
    let ea = (-a).exp();
    let eb = (-b).exp();
    let numer = 0.5
        * (cf.cos2_theta * cf.omega_minus * (1.0 + ea * eb).powi(2)
            + cf.sin2_theta * cf.omega_plus * (ea + eb).powi(2));
    if numer == 0.0 {
        return Ok(0.0);
    }
    let (ca, _) = scaled_cosh_sinh(a);
    let (cb, _) = scaled_cosh_sinh(b);
    let ln_chi = log_add_exp(a + ca.ln(), b + cb.ln());
    // cosh a -/+ cos2theta sinh a, over e^a, without cancellation
    let e2a = (-2.0 * a).exp();
    let minus = 0.5 * (1.0 - c2) + 0.5 * (1.0 + c2) * e2a;
    let plus = 0.5 * (1.0 + c2) + 0.5 * (1.0 - c2) * e2a;
    let ln_chi_minus_u = log_add_exp(a + minus.ln(), b);
    let ln_chi_plus_u = log_add_exp(a + plus.ln(), -b);
    let ln_f = 2.0 * (a + b + numer.abs().ln()) - 4.0 * t.ln() - 2.0 * ln_chi - ln_chi_minus_u
        - ln_chi_plus_u;
    Ok(ln_f.exp())
}

/// Low- and high-temperature single-channel populations and derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopulationApproximations {
    /// `cos^2 theta / (1 + e^{omega_-/T})`.
    pub p_low: f64,
    /// `omega_- cos^2 theta sech^2(omega_- / 2T) / (4 T^2)`.
    pub dp_low: f64,
    /// `1 / (1 + e^{omega_+/T})`.
    pub p_high: f64,
    /// `omega_+ sech^2(omega_+ / 2T) / (4 T^2)`.
    pub dp_high: f64,
}

pub fn population_approximations(cf: &TwoQubitClosedForm, t: f64) -> Result<PopulationApproximations> {
    check_temperature(t)?;
    let t2 = t * t;
    Ok(PopulationApproximations {
        p_low: cf.cos2_theta * fermi(cf.omega_minus / t),
        dp_low: cf.omega_minus * cf.cos2_theta * sech2(cf.omega_minus / (2.0 * t)) / (4.0 * t2),
        p_high: fermi(cf.omega_plus / t),
        dp_high: cf.omega_plus * sech2(cf.omega_plus / (2.0 * t)) / (4.0 * t2),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QfiApprox {
    pub low: f64,
    pub high: f64,
    pub total: f64,
}

/// `low = omega_-^2 cos^2 theta e^{2x} / (T^4 (1 + e^x)^2 (sin^2 theta + e^x))`
/// with `x = omega_- / T`; `high = omega_+^2 sech^2(omega_+ / 2T) / (4 T^4)`.
pub fn qfi_approx(cf: &TwoQubitClosedForm, t: f64) -> Result<QfiApprox> {
    check_temperature(t)?;
    let t4 = t.powi(4);
    let x = cf.omega_minus / t;
    let shape = if x > 0.0 {
        let e = (-x).exp();
        e / ((1.0 + e).powi(2) * (cf.sin2_theta * e + 1.0))
    } else {
        let e = x.exp();
        e * e / ((1.0 + e).powi(2) * (cf.sin2_theta + e))
    };
    let low = cf.omega_minus.powi(2) * cf.cos2_theta * shape / t4;
    let y = cf.omega_plus / t;
    let high = cf.omega_plus.powi(2) * 4.0 * fermi_variance(y) / (4.0 * t4);
    Ok(QfiApprox { low, high, total: low + high })
}
