//! Evaluating a scenario on its temperature grid.

use rayon::prelude::*;
use thermo_core::gibbs::ThermalProbe;
use thermo_core::{
    build_m_matrix, detect_peaks, fermionic_probe_population,
    fermionic_probe_population_derivative, fisher_point, population_approximations, predict_peaks,
    qfi_approx, qfi_exact_two_qubit, transition_spectrum, transitions_vs_parameter,
    two_qubit_closed_form, ChainSpec, FisherPoint, PeakList, TransitionSpectrum, TransitionTable,
    TwoQubitClosedForm,
};

use crate::error::{CliError, Result};
use crate::scenario::{Engine, Quantity, Scenario};

/// Vertical line at a predicted peak temperature.
#[derive(Debug, Clone, PartialEq)]
pub struct Marker {
    /// Sweep label of the curve the marker belongs to, empty without a sweep.
    pub group: String,
    pub energy: f64,
    pub temperature: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub values: Vec<f64>,
}

/// Tabulated curves on a shared temperature grid.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct QfiCurve {
    pub temperatures: Vec<f64>,
    pub columns: Vec<Column>,
    pub markers: Vec<Marker>,
    /// Free-form header lines (scenario parameters, detected peaks).
    pub metadata: Vec<String>,
}

impl QfiCurve {
    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns.iter().find(|c| c.name == name).map(|c| c.values.as_slice())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnPeaks {
    pub column: String,
    pub peaks: PeakList,
}

/// One curve family: the base chain or one sweep value.
#[derive(Debug, Clone, PartialEq)]
pub struct Variant {
    /// `("g1", 0.01)` for a sweep value.
    pub coordinate: Option<(String, f64)>,
    pub spec: ChainSpec,
}

impl Variant {
    pub fn label(&self) -> String {
        self.coordinate.as_ref().map(|(n, v)| format!("{n}={v}")).unwrap_or_default()
    }

    pub fn column_name(&self, base: &str) -> String {
        match &self.coordinate {
            Some(_) => format!("{base}[{}]", self.label()),
            None => base.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub curve: QfiCurve,
    pub peaks: Vec<ColumnPeaks>,
    pub spectra: Vec<(String, Vec<f64>)>,
    pub transitions: Option<TransitionTable>,
}

pub fn variants(scenario: &Scenario) -> Result<Vec<Variant>> {
    match &scenario.sweep {
        None => Ok(vec![Variant { coordinate: None, spec: scenario.spec.clone() }]),
        Some(sweep) => sweep
            .values
            .iter()
            .map(|&v| {
                Ok(Variant {
                    coordinate: Some((sweep.parameter.to_string(), v)),
                    spec: scenario.spec.with_parameter(sweep.parameter, v)?,
                })
            })
            .collect(),
    }
}

enum Source {
    Exact(ThermalProbe),
    Fermion(TransitionSpectrum),
}

impl Source {
    fn fisher(&self, t: f64) -> thermo_core::Result<FisherPoint> {
        match self {
            Source::Exact(probe) => fisher_point(probe, t),
            Source::Fermion(s) => {
                let up = fermionic_probe_population(s, t)?;
                let down = s.probe_depletion(t)?;
                let dp = fermionic_probe_population_derivative(s, t)?;
                Ok(FisherPoint::from_populations(t, up, down, dp))
            }
        }
    }
}

fn closed_form(spec: &ChainSpec) -> TwoQubitClosedForm {
    let w = spec.omegas();
    two_qubit_closed_form(w[0], w[1], spec.xx_couplings()[0], spec.dm_couplings()[0])
}

/// Values for every column of one variant at one temperature.
fn row(
    quantities: &[Quantity],
    source: &Source,
    cf: Option<&TwoQubitClosedForm>,
    t: f64,
) -> thermo_core::Result<Vec<f64>> {
    let fisher = source.fisher(t)?;
    let mut out = Vec::new();
    for q in quantities {
        match q {
            Quantity::Population => out.push(fisher.population),
            Quantity::Dpopulation => out.push(fisher.population_derivative),
            Quantity::Qfi => out.push(fisher.qfi),
            Quantity::Cfi => out.push(fisher.cfi),
            Quantity::FiSigmaZ => out.push(fisher.fi_sigma_z),
            Quantity::FiSigmaX => out.push(fisher.fi_sigma_x),
            Quantity::QfiClosedForm => {
                let cf = cf.expect("validated two-qubit scenario");
                // the closed form has no boundary handling of its own
                out.push(if fisher.boundary { 0.0 } else { qfi_exact_two_qubit(cf, t)? });
            }
            Quantity::DpopulationApprox => {
                let a = population_approximations(cf.expect("validated two-qubit scenario"), t)?;
                out.extend([a.dp_low, a.dp_high]);
            }
            Quantity::QfiApprox => {
                let a = qfi_approx(cf.expect("validated two-qubit scenario"), t)?;
                out.extend([a.low, a.high, a.total]);
            }
            Quantity::Spectrum | Quantity::Peaks => {}
        }
    }
    Ok(out)
}

pub fn run_scenario(scenario: &Scenario) -> Result<RunOutput> {
    scenario.validate()?;
    let temperatures = scenario.grid.temperatures();
    let mut curve = QfiCurve {
        temperatures: temperatures.clone(),
        metadata: scenario.describe(),
        ..QfiCurve::default()
    };
    let mut peaks = Vec::new();
    let mut spectra = Vec::new();

    for variant in variants(scenario)? {
        let numerical = |temperature: Option<f64>| {
            let coordinate = variant.coordinate.clone();
            move |source| CliError::Numerical { temperature, parameter: coordinate, source }
        };
        let spectrum = transition_spectrum(&build_m_matrix(&variant.spec)).map_err(numerical(None))?;
        let source = match scenario.engine {
            Engine::Exact => Source::Exact(ThermalProbe::new(&variant.spec).map_err(numerical(None))?),
            Engine::Fermion => Source::Fermion(spectrum.clone()),
        };
        let cf = (variant.spec.n_qubits() == 2).then(|| closed_form(&variant.spec));

        let rows = temperatures
            .par_iter()
            .map(|&t| row(&scenario.quantities, &source, cf.as_ref(), t).map_err(numerical(Some(t))))
            .collect::<Result<Vec<_>>>()?;

        let names: Vec<String> = scenario
            .quantities
            .iter()
            .flat_map(|q| q.columns().iter().map(|c| variant.column_name(c)))
            .collect();
        for (k, name) in names.into_iter().enumerate() {
            curve.columns.push(Column { name, values: rows.iter().map(|r| r[k]).collect() });
        }

        if scenario.wants(Quantity::Spectrum) || scenario.wants(Quantity::Peaks) {
            let group = variant.label();
            for p in predict_peaks(&spectrum) {
                curve.markers.push(Marker { group: group.clone(), energy: p.energy, temperature: p.temperature });
            }
            spectra.push((group, spectrum.energies().to_vec()));
        }

        if scenario.wants(Quantity::Peaks) {
            let column = variant.column_name(scenario.peaks_on.columns()[0]);
            let values = match curve.column(&column) {
                Some(v) => v.to_vec(),
                None => {
                    // peaks_on was not requested as an output column; evaluate it on its own
                    temperatures
                        .par_iter()
                        .map(|&t| {
                            row(&[scenario.peaks_on], &source, cf.as_ref(), t)
                                .map(|r| r[0])
                                .map_err(numerical(Some(t)))
                        })
                        .collect::<Result<Vec<_>>>()?
                }
            };
            let found = detect_peaks(&temperatures, &values).map_err(numerical(None))?;
            for p in &found.peaks {
                curve.metadata.push(format!(
                    "peak {column}: T = {:.6e}, height = {:.6e}, prominence = {:.6e}",
                    p.temperature, p.height, p.prominence
                ));
            }
            peaks.push(ColumnPeaks { column, peaks: found });
        }
    }

    let transitions = match &scenario.transitions {
        Some(tr) => Some(
            transitions_vs_parameter(&scenario.spec, tr.parameter, &tr.values)
                .map_err(|source| CliError::Numerical { temperature: None, parameter: None, source })?,
        ),
        None => None,
    };

    Ok(RunOutput { curve, peaks, spectra, transitions })
}
