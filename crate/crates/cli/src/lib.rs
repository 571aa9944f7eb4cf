//! Command-line front end for probe-qubit thermometry: scenario files,
//! temperature sweeps, CSV/SVG output, figure presets and a coupling
//! optimizer.

pub mod error;
pub mod optimize;
pub mod output;
pub mod plot;
pub mod presets;
pub mod run;
pub mod scenario;
pub mod table;

pub use error::{CliError, Result};
pub use optimize::{optimize_coupling, FreeParameter, OptimizeResult, TraceEntry};
pub use output::{write_outputs, Format};
pub use presets::{preset, preset_names};
pub use run::{run_scenario, ColumnPeaks, Marker, QfiCurve, RunOutput};
pub use scenario::{Engine, Grid, Quantity, Scenario};
