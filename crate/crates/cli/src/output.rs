//! Writing run results to disk.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{CliError, Result};
use crate::plot::{curve_svg, transitions_svg, PlotOptions};
use crate::run::RunOutput;
use crate::scenario::{Quantity, Scenario};
use crate::table::{write_curve, write_transitions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Svg,
    Both,
}

impl Format {
    fn csv(self) -> bool {
        matches!(self, Format::Csv | Format::Both)
    }

    fn svg(self) -> bool {
        matches!(self, Format::Svg | Format::Both)
    }
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "svg" => Ok(Format::Svg),
            "both" => Ok(Format::Both),
            _ => Err(CliError::Config(format!("format must be csv, svg or both, got `{s}`"))),
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(io_err(path))
}

fn y_label(scenario: &Scenario) -> &'static str {
    let info = scenario
        .quantities
        .iter()
        .any(|q| matches!(q, Quantity::Qfi | Quantity::QfiClosedForm | Quantity::QfiApprox | Quantity::Cfi));
    if info {
        "Fisher information"
    } else {
        "dp/dT"
    }
}

/// Writes `<name>.csv` / `<name>.svg`, plus `<name>_transitions.*` when the
/// scenario tabulates transition energies. Returns the files written.
pub fn write_outputs(scenario: &Scenario, output: &RunOutput, dir: &Path, format: Format) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut written = Vec::new();
    let stem = &scenario.name;

    if format.csv() {
        let path = dir.join(format!("{stem}.csv"));
        write_curve(&output.curve, create(&path)?)?;
        written.push(path);
    }
    if format.svg() {
        // population lives on a different scale; plot it only when it is alone
        let mut columns: Vec<&str> = output
            .curve
            .columns
            .iter()
            .map(|c| c.name.as_str())
            .filter(|n| !n.starts_with("population"))
            .collect();
        if columns.is_empty() {
            columns = output.curve.columns.iter().map(|c| c.name.as_str()).collect();
        }
        let title = if scenario.title.is_empty() { stem } else { &scenario.title };
        let svg = curve_svg(&output.curve, &columns, &PlotOptions::temperature(title, y_label(scenario), scenario.log_y));
        let path = dir.join(format!("{stem}.svg"));
        std::fs::write(&path, svg).map_err(io_err(&path))?;
        written.push(path);
    }
    if let Some(table) = &output.transitions {
        if format.csv() {
            let path = dir.join(format!("{stem}_transitions.csv"));
            let mut meta = scenario.describe();
            meta.push(format!("transition energies vs {}", table.parameter));
            write_transitions(table, &meta, create(&path)?)?;
            written.push(path);
        }
        if format.svg() {
            let path = dir.join(format!("{stem}_transitions.svg"));
            let svg = transitions_svg(table, &format!("{stem}: transition energies"));
            std::fs::write(&path, svg).map_err(io_err(&path))?;
            written.push(path);
        }
    }
    Ok(written)
}
