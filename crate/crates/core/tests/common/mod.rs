#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thermo_core::numeric::logspace;
use thermo_core::ChainSpec;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Frequencies log-uniform in [0.01, 2], couplings uniform in [-0.5, 0.5].
pub fn random_spec(rng: &mut impl Rng, n: usize) -> ChainSpec {
    let omegas = (0..n).map(|_| 10f64.powf(rng.random_range(-2.0..0.3))).collect();
    let xx = (0..n - 1).map(|_| rng.random_range(-0.5..0.5)).collect();
    let dm = (0..n - 1).map(|_| rng.random_range(-0.5..0.5)).collect();
    ChainSpec::new(omegas, xx, dm).unwrap()
}

pub fn ensemble(seed: u64, count: usize) -> Vec<ChainSpec> {
    let mut r = rng(seed);
    (0..count)
        .map(|k| {
            let n = 2 + k % 4;
            random_spec(&mut r, n)
        })
        .collect()
}

pub fn temperatures() -> Vec<f64> {
    logspace(1e-3, 1e2, 10)
}

/// Richardson-extrapolated central difference with base step `1e-5 T`.
pub fn richardson(f: impl Fn(f64) -> f64, t: f64) -> f64 {
    let central = |h: f64| (f(t + h) - f(t - h)) / (2.0 * h);
    let h = 1e-5 * t;
    (4.0 * central(h / 2.0) - central(h)) / 3.0
}

pub fn fig5a(g: f64) -> ChainSpec {
    ChainSpec::two_qubit(0.04, 1.0, 0.05, g).unwrap()
}

pub fn fig8a() -> ChainSpec {
    ChainSpec::new(vec![0.04, 0.4, 1.0], vec![0.06, 0.4], vec![0.04, 0.4]).unwrap()
}

pub fn fig9(j1: f64, g1: f64) -> ChainSpec {
    ChainSpec::new(vec![0.004, 0.04, 0.4, 1.0], vec![j1, 0.08, 0.4], vec![g1, 0.06, 0.4]).unwrap()
}

pub fn fig10(g1: f64) -> ChainSpec {
    ChainSpec::new(
        vec![0.0004, 0.004, 0.04, 0.4, 1.0],
        vec![0.00095, 0.008, 0.08, 0.4],
        vec![g1, 0.005, 0.06, 0.2],
    )
    .unwrap()
}
