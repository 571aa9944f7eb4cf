use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid chain specification: {0}")]
    InvalidSpec(String),

    #[error("site {site} out of range for a chain of {n_qubits} qubits")]
    SiteOutOfRange { site: usize, n_qubits: usize },

    #[error("temperature must be positive and finite, got {0}")]
    NonPositiveTemperature(f64),

    #[error("eigensolver did not converge for a {dimension}x{dimension} matrix")]
    EigenSolver { dimension: usize },

    /// The probe population sits on the boundary `p in {0, 1}` where Fisher
    /// information is undefined (the temperature grid should be clamped).
    #[error("population {0} is on the boundary of [0, 1]")]
    BoundaryPopulation(f64),

    /// The measured observable has zero variance.
    #[error("observable has zero variance")]
    ZeroVariance,

    #[error("unknown or out-of-range parameter selector `{0}`")]
    BadSelector(String),

    #[error("need at least 3 samples to detect peaks, got {0}")]
    TooFewSamples(usize),

    #[error("temperatures must be strictly increasing")]
    UnsortedGrid,

    #[error("curve has {values} values for {temperatures} temperatures")]
    LengthMismatch { temperatures: usize, values: usize },

    #[error("peak equation needs a non-zero transition energy")]
    ZeroEnergy,

    #[error("fixed-point iteration did not converge")]
    NoConvergence,
}

pub(crate) fn check_temperature(t: f64) -> Result<()> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveTemperature(t))
    }
}
