//! Coupling optimization: maximize the QFI at a target temperature.

use std::str::FromStr;

use thermo_core::gibbs::ThermalProbe;
use thermo_core::numeric::golden_section_max;
use thermo_core::{fisher_point, ChainSpec, ParameterSelector};

use crate::error::{CliError, Result};

const TOLERANCE: f64 = 1e-9;
const MAX_ITER: usize = 200;
pub const DEFAULT_PASSES: usize = 2;

/// A parameter allowed to move within `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeParameter {
    pub selector: ParameterSelector,
    pub lo: f64,
    pub hi: f64,
}

impl FromStr for FreeParameter {
    type Err = CliError;

    /// `selector:lo:hi`, e.g. `g1:0.01:0.03`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || CliError::Config(format!("free parameter must look like `g1:lo:hi`, got `{s}`"));
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        Ok(Self {
            selector: parts[0].parse()?,
            lo: parts[1].trim().parse().map_err(|_| bad())?,
            hi: parts[2].trim().parse().map_err(|_| bad())?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEntry {
    pub pass: usize,
    pub selector: ParameterSelector,
    pub value: f64,
    pub qfi: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeResult {
    pub spec: ChainSpec,
    pub qfi: f64,
    pub trace: Vec<TraceEntry>,
}

pub fn qfi_at(spec: &ChainSpec, t: f64) -> thermo_core::Result<f64> {
    Ok(fisher_point(&ThermalProbe::new(spec)?, t)?.qfi)
}

/// Coordinate-wise golden-section ascent over the free parameters.
///
/// Each pass maximizes one parameter at a time with the others held fixed.
/// The search is local: a multimodal QFI landscape can stop it short of the
/// global optimum.
pub fn optimize_coupling(
    spec: &ChainSpec,
    target_t: f64,
    free: &[FreeParameter],
    passes: usize,
) -> Result<OptimizeResult> {
    if !(target_t.is_finite() && target_t > 0.0) {
        return Err(CliError::Config(format!("target temperature must be positive, got {target_t}")));
    }
    if free.is_empty() {
        return Err(CliError::Config("no free parameters given".into()));
    }
    for f in free {
        spec.parameter(f.selector)?;
        if !(f.lo.is_finite() && f.hi.is_finite()) || f.lo > f.hi {
            return Err(CliError::Config(format!(
                "bounds for {} must satisfy lo <= hi, got [{}, {}]",
                f.selector, f.lo, f.hi
            )));
        }
    }
    let numerical = |source| CliError::Numerical { temperature: Some(target_t), parameter: None, source };

    let mut current = spec.clone();
    for f in free {
        let start = current.parameter(f.selector)?.clamp(f.lo, f.hi);
        current = current.with_parameter(f.selector, start)?;
    }
    let mut best = qfi_at(&current, target_t).map_err(numerical)?;
    let mut trace = Vec::new();

    for pass in 1..=passes.max(1) {
        for f in free {
            let mut failure = None;
            let (x, fx, steps) = golden_section_max(
                |v| {
                    let q = current
                        .with_parameter(f.selector, v)
                        .and_then(|s| qfi_at(&s, target_t));
                    match q {
                        Ok(q) => q,
                        Err(e) => {
                            failure.get_or_insert(e);
                            f64::NEG_INFINITY
                        }
                    }
                },
                f.lo,
                f.hi,
                TOLERANCE,
                MAX_ITER,
            );
            if let Some(e) = failure {
                return Err(CliError::Numerical {
                    temperature: Some(target_t),
                    parameter: Some((f.selector.to_string(), x)),
                    source: e,
                });
            }
            trace.extend(steps.into_iter().map(|(value, qfi)| TraceEntry { pass, selector: f.selector, value, qfi }));
            // keep the incumbent unless the line search actually improved on it
            if fx > best {
                best = fx;
                current = current.with_parameter(f.selector, x)?;
            }
        }
    }
    Ok(OptimizeResult { spec: current, qfi: best, trace })
}
