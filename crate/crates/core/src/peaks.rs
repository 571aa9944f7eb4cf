//! Locating sensitivity maxima: predicted from transition energies, and
//! detected on sampled curves.

use crate::error::{Error, Result};
use crate::fermion::TransitionSpectrum;

/// A local maximum must stand this far (relative to its own height) above
/// the higher of its two flanking minima.
pub const RELATIVE_PROMINENCE: f64 = 0.01;

/// Maxima lower than this fraction of the global maximum are numerical noise.
pub const NOISE_FLOOR: f64 = 1e-10;

const FIXED_POINT_TOL: f64 = 1e-12;
const FIXED_POINT_MAX_ITER: usize = 500;

/// Root of `T = (|E|/2) tanh(|E| / 2T)`.
///
/// With `t = T/|E|` the equation is energy-free, `t = tanh(1/(2t))/2`; the
/// map is a contraction near its fixed point (slope about -0.44), so plain
/// iteration from `t = 0.4` converges.
pub fn solve_peak_equation(energy: f64) -> Result<f64> {
    if energy == 0.0 || !energy.is_finite() {
        return Err(Error::ZeroEnergy);
    }
    Ok(energy.abs() * peak_scale_checked()?)
}

fn peak_scale_checked() -> Result<f64> {
    let mut t = 0.4f64;
    for _ in 0..FIXED_POINT_MAX_ITER {
        let next = 0.5 * (0.5 / t).tanh();
        if (next - t).abs() <= FIXED_POINT_TOL * next {
            return Ok(next);
        }
        t = next;
    }
    Err(Error::NoConvergence)
}

/// The universal ratio `T*/|E|` (about `1/2.3994`).
pub fn peak_scale() -> f64 {
    peak_scale_checked().expect("fixed-point map is a contraction")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakPrediction {
    pub energy: f64,
    pub temperature: f64,
}

/// One prediction per transition energy, zero energies skipped.
pub fn predict_peaks(spectrum: &TransitionSpectrum) -> Vec<PeakPrediction> {
    spectrum
        .energies()
        .iter()
        .filter_map(|&e| solve_peak_equation(e).ok().map(|t| PeakPrediction { energy: e, temperature: t }))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    /// Parabola-refined in `ln T`.
    pub temperature: f64,
    /// Largest sample of the peak.
    pub height: f64,
    /// Height above the deeper flanking minimum.
    pub prominence: f64,
    /// Sample index of the maximum.
    pub index: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PeakList {
    pub peaks: Vec<Peak>,
}

impl PeakList {
    pub fn len(&self) -> usize {
        self.peaks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.peaks.is_empty()
    }

    pub fn temperatures(&self) -> Vec<f64> {
        self.peaks.iter().map(|p| p.temperature).collect()
    }

    pub fn heights(&self) -> Vec<f64> {
        self.peaks.iter().map(|p| p.height).collect()
    }
}

/// Interior local maxima of a sampled curve.
///
/// Candidates are strict local maxima (a flat top counts once). On each side
/// the curve is followed until it climbs above the candidate or ends; the
/// candidate is kept if it stands above the higher of the two minima found
/// by at least [`RELATIVE_PROMINENCE`] of its own height. Judging relative to the peak
/// itself keeps low-temperature maxima that are many decades below the
/// global maximum, while shoulders of a merged peak are still rejected.
pub fn detect_peaks(temperatures: &[f64], values: &[f64]) -> Result<PeakList> {
    let n = temperatures.len();
    if values.len() != n {
        return Err(Error::LengthMismatch { temperatures: n, values: values.len() });
    }
    if n < 3 {
        return Err(Error::TooFewSamples(n));
    }
    if temperatures.windows(2).any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater)) {
        return Err(Error::UnsortedGrid);
    }

    let mut candidates = Vec::new();
    let mut i = 1;
    while i + 1 < n {
        if values[i] > values[i - 1] {
            let mut j = i;
            while j + 1 < n && values[j + 1] == values[i] {
                j += 1;
            }
            if j + 1 < n && values[j + 1] < values[i] {
                candidates.push((i + j) / 2);
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }

    let global = values.iter().copied().filter(|v| v.is_finite()).fold(f64::NEG_INFINITY, f64::max);
    let mut peaks = PeakList::default();
    for &c in &candidates {
        let h = values[c];
        if h.is_nan() || h <= 0.0 || h < NOISE_FLOOR * global {
            continue;
        }
        let prominence = h - flank_min(values, c, -1).max(flank_min(values, c, 1));
        if prominence >= RELATIVE_PROMINENCE * h {
            peaks.peaks.push(Peak {
                temperature: refine_log(temperatures, values, c),
                height: h,
                prominence,
                index: c,
            });
        }
    }
    Ok(peaks)
}

/// Lowest value met walking from `c` in direction `step` until the curve
/// rises above `values[c]` or ends.
fn flank_min(values: &[f64], c: usize, step: isize) -> f64 {
    let h = values[c];
    let mut lowest = h;
    let mut i = c as isize + step;
    while i >= 0 && (i as usize) < values.len() {
        let v = values[i as usize];
        if v > h {
            break;
        }
        lowest = lowest.min(v);
        i += step;
    }
    lowest
}

/// Vertex of the parabola through the three samples around `c`, in `ln T`.
fn refine_log(temperatures: &[f64], values: &[f64], c: usize) -> f64 {
    let (x0, x1, x2) = (temperatures[c - 1].ln(), temperatures[c].ln(), temperatures[c + 1].ln());
    let (y0, y1, y2) = (values[c - 1], values[c], values[c + 1]);
    let num = (x1 - x0).powi(2) * (y1 - y2) - (x1 - x2).powi(2) * (y1 - y0);
    let den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
    if den == 0.0 || !num.is_finite() || !den.is_finite() {
        return temperatures[c];
    }
    let x = x1 - 0.5 * num / den;
    if x > x0 && x < x2 {
        x.exp()
    } else {
        temperatures[c]
    }
}
