use ddbh_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeanfieldError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("invalid initial state: {0}")]
    InvalidState(String),
    #[error("integrator step error: trace drifted to {trace} at t = {t}")]
    TraceDrift { trace: f64, t: f64 },
    #[error("state diverged at t = {0}")]
    Diverged(f64),
    #[error("positivity violation: density-matrix eigenvalue {0}")]
    Positivity(f64),
    #[error("non-uniform sample spacing at sample {0}")]
    NonUniformSampling(usize),
    #[error("sampling too coarse: phase jump {jump} rad between samples {index} and {next}", next = index + 1)]
    SamplingTooCoarse { index: usize, jump: f64 },
    #[error("at least 3 samples required, got {0}")]
    TooFewSamples(usize),
    #[error("analytic formula undefined: {0}")]
    Undefined(&'static str),
    #[error("hard-core basis required")]
    NotHardCore,
}
