//! Scenario files.
//!
//! ```toml
//! name = "example"
//! title = "two-qubit chain, off-resonant"
//! notes = ["free-form lines copied into the CSV header"]
//!
//! [chain]
//! omegas = [0.04, 1.0]   # qubit 1 ... probe
//! xx = [0.05]            # J_1 ... J_{N-1}
//! dm = [0.03]            # g_1 ... g_{N-1}
//!
//! [grid]                 # log-spaced temperatures
//! t_min = 1e-3
//! t_max = 3.0
//! n_points = 400
//!
//! [output]
//! quantities = ["qfi", "spectrum", "peaks"]
//! peaks_on = "qfi"
//! log_y = false
//! engine = "exact"       # or "fermion"
//!
//! [sweep]                # optional: one curve per value
//! parameter = "g1"
//! values = [0.01, 0.02, 0.03]
//!
//! [transitions]          # optional: spectrum of M along a parameter
//! parameter = "g2"
//! start = 0.0
//! stop = 0.1
//! n_points = 201
//! ```

use std::fmt;
use std::str::FromStr;

use serde::Deserialize;
use thermo_core::{ChainSpec, ParameterSelector};

use crate::error::{CliError, Result};

pub const DEFAULT_POINTS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Population,
    Dpopulation,
    /// Low- and high-temperature single-channel derivatives (two qubits).
    DpopulationApprox,
    Qfi,
    /// Closed-form two-qubit QFI.
    QfiClosedForm,
    /// Low, high and total approximate QFI (two qubits).
    QfiApprox,
    Cfi,
    FiSigmaZ,
    FiSigmaX,
    /// Transition energies and predicted peak temperatures as markers.
    Spectrum,
    /// Peak detection on the `peaks_on` column.
    Peaks,
}

impl Quantity {
    pub const ALL: [Quantity; 11] = [
        Quantity::Population,
        Quantity::Dpopulation,
        Quantity::DpopulationApprox,
        Quantity::Qfi,
        Quantity::QfiClosedForm,
        Quantity::QfiApprox,
        Quantity::Cfi,
        Quantity::FiSigmaZ,
        Quantity::FiSigmaX,
        Quantity::Spectrum,
        Quantity::Peaks,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Population => "population",
            Quantity::Dpopulation => "dpopulation",
            Quantity::DpopulationApprox => "dpopulation_approx",
            Quantity::Qfi => "qfi",
            Quantity::QfiClosedForm => "qfi_closed_form",
            Quantity::QfiApprox => "qfi_approx",
            Quantity::Cfi => "cfi",
            Quantity::FiSigmaZ => "fi_sigma_z",
            Quantity::FiSigmaX => "fi_sigma_x",
            Quantity::Spectrum => "spectrum",
            Quantity::Peaks => "peaks",
        }
    }

    /// CSV columns produced per curve.
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Quantity::Population => &["population"],
            Quantity::Dpopulation => &["dpopulation"],
            Quantity::DpopulationApprox => &["dp_low", "dp_high"],
            Quantity::Qfi => &["qfi"],
            Quantity::QfiClosedForm => &["qfi_closed_form"],
            Quantity::QfiApprox => &["qfi_low", "qfi_high", "qfi_approx"],
            Quantity::Cfi => &["cfi"],
            Quantity::FiSigmaZ => &["fi_sigma_z"],
            Quantity::FiSigmaX => &["fi_sigma_x"],
            Quantity::Spectrum | Quantity::Peaks => &[],
        }
    }

    fn two_qubit_only(self) -> bool {
        matches!(self, Quantity::DpopulationApprox | Quantity::QfiClosedForm | Quantity::QfiApprox)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name() == s)
            .ok_or_else(|| CliError::Config(format!("unknown quantity `{s}`")))
    }
}

/// How the probe population is obtained.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    /// Diagonalize the full `2^N` Hamiltonian.
    #[default]
    Exact,
    /// Fermi-weighted sum over the `N` single-particle modes.
    Fermion,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub t_min: f64,
    pub t_max: f64,
    pub n_points: usize,
}

impl Grid {
    pub fn new(t_min: f64, t_max: f64, n_points: usize) -> Result<Self> {
        if !(t_min.is_finite() && t_max.is_finite() && t_min > 0.0 && t_min < t_max) {
            return Err(CliError::Config(format!(
                "grid needs 0 < t_min < t_max, got {t_min} and {t_max}"
            )));
        }
        if n_points < 3 {
            return Err(CliError::Config(format!("grid needs at least 3 points, got {n_points}")));
        }
        Ok(Self { t_min, t_max, n_points })
    }

    pub fn temperatures(&self) -> Vec<f64> {
        thermo_core::numeric::logspace(self.t_min, self.t_max, self.n_points)
    }
}

impl FromStr for Grid {
    type Err = CliError;

    /// `min:max:n`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || CliError::Config(format!("grid must look like `min:max:n`, got `{s}`"));
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let t_min = parts[0].trim().parse().map_err(|_| bad())?;
        let t_max = parts[1].trim().parse().map_err(|_| bad())?;
        let n = parts[2].trim().parse().map_err(|_| bad())?;
        Grid::new(t_min, t_max, n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub parameter: ParameterSelector,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransitionSweep {
    pub parameter: ParameterSelector,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub title: String,
    pub notes: Vec<String>,
    pub spec: ChainSpec,
    pub grid: Grid,
    pub quantities: Vec<Quantity>,
    pub peaks_on: Quantity,
    pub log_y: bool,
    pub engine: Engine,
    pub sweep: Option<Sweep>,
    pub transitions: Option<TransitionSweep>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: String,
    #[serde(default)]
    title: String,
    #[serde(default)]
    notes: Vec<String>,
    chain: RawChain,
    grid: RawGrid,
    #[serde(default)]
    output: RawOutput,
    sweep: Option<RawSweep>,
    transitions: Option<RawTransitions>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChain {
    omegas: Vec<f64>,
    xx: Vec<f64>,
    dm: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    t_min: f64,
    t_max: f64,
    #[serde(default = "default_points")]
    n_points: usize,
}

fn default_points() -> usize {
    DEFAULT_POINTS
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    #[serde(default = "default_quantities")]
    quantities: Vec<Quantity>,
    #[serde(default = "default_peaks_on")]
    peaks_on: Quantity,
    #[serde(default)]
    log_y: bool,
    #[serde(default)]
    engine: Engine,
}

impl Default for RawOutput {
    fn default() -> Self {
        Self {
            quantities: default_quantities(),
            peaks_on: default_peaks_on(),
            log_y: false,
            engine: Engine::Exact,
        }
    }
}

fn default_quantities() -> Vec<Quantity> {
    vec![Quantity::Population, Quantity::Dpopulation, Quantity::Qfi, Quantity::Peaks]
}

fn default_peaks_on() -> Quantity {
    Quantity::Qfi
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    parameter: String,
    values: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTransitions {
    parameter: String,
    start: f64,
    stop: f64,
    #[serde(default = "default_points")]
    n_points: usize,
}

impl Scenario {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawScenario =
            toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        let spec = ChainSpec::new(raw.chain.omegas, raw.chain.xx, raw.chain.dm)?;
        let grid = Grid::new(raw.grid.t_min, raw.grid.t_max, raw.grid.n_points)?;
        let selector = |s: &str| -> Result<ParameterSelector> {
            let sel: ParameterSelector = s.parse()?;
            spec.parameter(sel)?;
            Ok(sel)
        };
        let sweep = match raw.sweep {
            Some(s) => {
                if s.values.is_empty() {
                    return Err(CliError::Config("sweep needs at least one value".into()));
                }
                Some(Sweep { parameter: selector(&s.parameter)?, values: s.values })
            }
            None => None,
        };
        let transitions = match raw.transitions {
            Some(t) => {
                if !(t.start.is_finite() && t.stop.is_finite()) || t.n_points < 2 {
                    return Err(CliError::Config("transitions need finite bounds and 2+ points".into()));
                }
                Some(TransitionSweep {
                    parameter: selector(&t.parameter)?,
                    values: thermo_core::numeric::linspace(t.start, t.stop, t.n_points),
                })
            }
            None => None,
        };
        let scenario = Scenario {
            name: raw.name,
            title: raw.title,
            notes: raw.notes,
            spec,
            grid,
            quantities: raw.output.quantities,
            peaks_on: raw.output.peaks_on,
            log_y: raw.output.log_y,
            engine: raw.output.engine,
            sweep,
            transitions,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() || self.name.contains(['/', '\\']) {
            return Err(CliError::Config(format!("scenario name `{}` is not a file stem", self.name)));
        }
        if self.spec.n_qubits() != 2 {
            if let Some(q) = self.quantities.iter().find(|q| q.two_qubit_only()) {
                return Err(CliError::Config(format!("`{q}` is only defined for two qubits")));
            }
        }
        if self.engine == Engine::Fermion && self.quantities.contains(&Quantity::FiSigmaX) {
            return Err(CliError::Config("`fi_sigma_x` needs the exact engine".into()));
        }
        if self.quantities.contains(&Quantity::Peaks) && self.peaks_on.columns().len() != 1 {
            return Err(CliError::Config(format!("cannot detect peaks on `{}`", self.peaks_on)));
        }
        Ok(())
    }

    pub fn wants(&self, q: Quantity) -> bool {
        self.quantities.contains(&q)
    }

    /// Parameter lines for the CSV header.
    pub fn describe(&self) -> Vec<String> {
        let list = |v: &[f64]| v.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(", ");
        let mut lines = vec![format!("scenario: {}", self.name)];
        if !self.title.is_empty() {
            lines.push(format!("title: {}", self.title));
        }
        lines.extend(self.notes.iter().map(|n| format!("note: {n}")));
        lines.push(format!("omegas: {}", list(self.spec.omegas())));
        lines.push(format!("xx: {}", list(self.spec.xx_couplings())));
        lines.push(format!("dm: {}", list(self.spec.dm_couplings())));
        lines.push(format!(
            "grid: log-spaced, {} points on [{}, {}]",
            self.grid.n_points, self.grid.t_min, self.grid.t_max
        ));
        lines.push(format!("engine: {:?}", self.engine).to_lowercase());
        if let Some(s) = &self.sweep {
            lines.push(format!("sweep: {} in [{}]", s.parameter, list(&s.values)));
        }
        lines
    }
}
