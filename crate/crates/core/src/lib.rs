//! Core types shared by every stage of the pipeline: the local Fock x emitter
//! basis, model parameters, the vectorized site density matrix and a small
//! execution layer that maps work either sequentially or over a rayon pool.

pub mod basis;
pub mod error;
pub mod exec;
pub mod fit;
pub mod params;
pub mod state;

pub use basis::{LocalBasis, SPINS};
pub use error::CoreError;
pub use exec::Execution;
pub use params::ModelParams;
pub use state::{validate_state, GutzwillerState, Violation};

pub use num_complex::Complex64 as C64;
