use num_complex::Complex64 as C64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectrumError {
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("near-defective matrix: eigenvector condition number {cond:e}, cluster {cluster:?}")]
    Degenerate { cond: f64, cluster: Vec<C64> },
    #[error("branch tracking ambiguous between k-points {from} and {to} (overlap {overlap:.3})")]
    TrackingAmbiguity {
        from: usize,
        to: usize,
        overlap: f64,
    },
    #[error("empty k-path")]
    EmptyPath,
    #[error("wavevector has {got} components, lattice dimension is {want}")]
    Dimension { got: usize, want: usize },
}
