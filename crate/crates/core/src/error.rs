use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("index out of range: n={n}, m={m}, sigma={sigma}, sigma'={sigma_p} (n_max={n_max})")]
    IndexOutOfRange {
        n: usize,
        m: usize,
        sigma: i8,
        sigma_p: i8,
        n_max: usize,
    },
    #[error("flat index {0} out of range (dim {1})")]
    FlatOutOfRange(usize, usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("state length {got} does not match basis dimension {want}")]
    DimensionMismatch { got: usize, want: usize },
}
