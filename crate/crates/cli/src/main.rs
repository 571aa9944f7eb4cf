use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thermo_cli::optimize::{optimize_coupling, FreeParameter, DEFAULT_PASSES};
use thermo_cli::presets::{preset, preset_names, preset_source};
use thermo_cli::run::{run_scenario, RunOutput};
use thermo_cli::scenario::{Engine, Grid, Quantity, Scenario, Sweep};
use thermo_cli::{write_outputs, CliError, Format, Result};
use thermo_core::{build_m_matrix, predict_peaks, transition_spectrum, ParameterSelector};

/// Probe-qubit thermometry: thermal states, Fisher information and peak
/// temperatures of a qubit chain.
#[derive(Parser)]
#[command(name = "thermo", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario file (TOML).
    #[arg(long, global = true, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Use a built-in preset as the scenario.
    #[arg(long, global = true)]
    preset: Option<String>,
    /// Output directory.
    #[arg(long, global = true, env = "THERMO_OUT_DIR", default_value = "out")]
    out: PathBuf,
    /// csv, svg or both.
    #[arg(long, global = true, default_value = "csv")]
    format: Format,
    /// Override the temperature grid, `min:max:n`.
    #[arg(long, global = true)]
    grid: Option<Grid>,
}

#[derive(Subcommand)]
enum Command {
    /// Print transition energies and predicted peak temperatures.
    Spectrum,
    /// Probe population and its temperature derivative.
    Population,
    /// QFI together with the CFI and sigma_z / sigma_x readout information.
    Qfi,
    /// Detect QFI peaks and compare them with the predictions.
    Peaks,
    /// Run the scenario as written, optionally overriding its sweep.
    Sweep {
        /// Parameter to sweep, e.g. `g1`.
        #[arg(long, requires = "values")]
        parameter: Option<ParameterSelector>,
        /// Comma-separated values.
        #[arg(long, value_delimiter = ',', requires = "parameter")]
        values: Option<Vec<f64>>,
    },
    /// Write the CSV (and plot) for a figure preset, or `all` of them.
    Reproduce { name: String },
    /// Maximize the QFI at one temperature over selected couplings.
    Optimize {
        #[arg(long)]
        target_t: f64,
        /// `selector:lo:hi`, repeatable.
        #[arg(long, required = true)]
        free: Vec<FreeParameter>,
        #[arg(long, default_value_t = DEFAULT_PASSES)]
        passes: usize,
        /// Print every evaluated point.
        #[arg(long)]
        trace: bool,
    },
    /// List presets, or print the annotated source of one.
    Presets { name: Option<String> },
}

fn load(common: &Common) -> Result<Scenario> {
    let mut scenario = match (&common.config, &common.preset) {
        (Some(path), _) => Scenario::from_path(path)?,
        (None, Some(name)) => preset(name)?,
        (None, None) => return Err(CliError::Config("give --config <file> or --preset <name>".into())),
    };
    if let Some(grid) = common.grid {
        scenario.grid = grid;
    }
    Ok(scenario)
}

fn with_quantities(mut s: Scenario, suffix: &str, quantities: Vec<Quantity>) -> Result<Scenario> {
    s.name = format!("{}_{suffix}", s.name);
    s.quantities = quantities;
    s.validate()?;
    Ok(s)
}

fn emit(scenario: &Scenario, out: &RunOutput, common: &Common) -> Result<()> {
    for p in &out.peaks {
        for peak in &p.peaks.peaks {
            println!("peak {}: T = {:.6e}, height = {:.6e}", p.column, peak.temperature, peak.height);
        }
    }
    for path in write_outputs(scenario, out, &common.out, common.format)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let common = &cli.common;
    match cli.command {
        Command::Spectrum => {
            let s = load(common)?;
            let spectrum = transition_spectrum(&build_m_matrix(&s.spec))
                .map_err(|source| CliError::Numerical { temperature: None, parameter: None, source })?;
            println!("l,energy,probe_weight,predicted_T");
            let preds = predict_peaks(&spectrum);
            for (l, (e, w)) in spectrum.energies().iter().zip(spectrum.probe_weights()).enumerate() {
                let t = preds.iter().find(|p| p.energy == *e).map(|p| format!("{:.16e}", p.temperature));
                println!("{},{e:.16e},{w:.16e},{}", l + 1, t.unwrap_or_default());
            }
            Ok(())
        }
        Command::Population => {
            let s = with_quantities(load(common)?, "population", vec![Quantity::Population, Quantity::Dpopulation])?;
            emit(&s, &run_scenario(&s)?, common)
        }
        Command::Qfi => {
            let base = load(common)?;
            let mut q = vec![Quantity::Qfi, Quantity::Cfi, Quantity::FiSigmaZ];
            if base.engine == Engine::Exact {
                q.push(Quantity::FiSigmaX);
            }
            let s = with_quantities(base, "qfi", q)?;
            emit(&s, &run_scenario(&s)?, common)
        }
        Command::Peaks => {
            let base = load(common)?;
            let peaks_on = base.peaks_on;
            let s = with_quantities(base, "peaks", vec![peaks_on, Quantity::Spectrum, Quantity::Peaks])?;
            let out = run_scenario(&s)?;
            for m in &out.curve.markers {
                println!("predicted {}: E = {:.6e}, T = {:.6e}", m.group, m.energy, m.temperature);
            }
            emit(&s, &out, common)
        }
        Command::Sweep { parameter, values } => {
            let mut s = load(common)?;
            if let (Some(parameter), Some(values)) = (parameter, values) {
                s.spec.parameter(parameter)?;
                s.sweep = Some(Sweep { parameter, values });
            }
            if s.sweep.is_none() {
                return Err(CliError::Config("scenario has no [sweep]; pass --parameter and --values".into()));
            }
            emit(&s, &run_scenario(&s)?, common)
        }
        Command::Reproduce { name } => {
            let names: Vec<&str> = if name == "all" { preset_names().collect() } else { vec![name.as_str()] };
            for n in names {
                let mut s = preset(n)?;
                if let Some(grid) = common.grid {
                    s.grid = grid;
                }
                emit(&s, &run_scenario(&s)?, common)?;
            }
            Ok(())
        }
        Command::Optimize { target_t, free, passes, trace } => {
            let s = load(common)?;
            let r = optimize_coupling(&s.spec, target_t, &free, passes)?;
            if trace {
                println!("pass,parameter,value,qfi");
                for e in &r.trace {
                    println!("{},{},{:.16e},{:.16e}", e.pass, e.selector, e.value, e.qfi);
                }
            }
            for f in &free {
                println!("{} = {:.10e}", f.selector, r.spec.parameter(f.selector)?);
            }
            println!("qfi = {:.10e} at T = {target_t:e}", r.qfi);
            Ok(())
        }
        Command::Presets { name } => {
            match name {
                Some(n) => print!("{}", preset_source(&n)?),
                None => preset_names().for_each(|n| println!("{n}")),
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
