use ddbh_spectrum::SpectrumError;
use num_complex::Complex64 as C64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ResponseError {
    #[error("probe frequency {0} sits on an undamped pole")]
    Pole(C64),
    #[error("reflection relation needs a nonzero right mirror amplitude")]
    ZeroMirror,
    #[error("singular resolvent at ω = {0}")]
    Singular(f64),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}
