use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("numerical failure{}{}: {source}", fmt_temp(.temperature), fmt_param(.parameter))]
    Numerical {
        /// `None` for failures that do not depend on temperature.
        temperature: Option<f64>,
        /// Sweep coordinate, e.g. `("g1", 0.006)`.
        parameter: Option<(String, f64)>,
        #[source]
        source: thermo_core::Error,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed CSV: {0}")]
    Csv(String),
}

fn fmt_temp(t: &Option<f64>) -> String {
    t.map(|t| format!(" at T = {t:e}")).unwrap_or_default()
}

fn fmt_param(p: &Option<(String, f64)>) -> String {
    match p {
        Some((name, v)) => format!(" ({name} = {v})"),
        None => String::new(),
    }
}

impl CliError {
    /// 2 for configuration problems, 3 for numerical failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical { .. } => 3,
            CliError::Io { .. } | CliError::Csv(_) => 1,
        }
    }
}

impl From<thermo_core::Error> for CliError {
    fn from(e: thermo_core::Error) -> Self {
        CliError::Config(e.to_string())
    }
}
