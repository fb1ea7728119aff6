//! Linearized fluctuations around a steady state.
//!
//! A plane-wave fluctuation `δc(r) = u e^{ik·r} + v* e^{−ik·r}` obeys
//! `ω u = A_k u`; the hole sector follows by transposition, so only the
//! A block is diagonalized. Its spectrum is already closed under ω ↦ −ω*.

pub mod ablock;
pub mod branches;
pub mod error;
pub mod linalg;
pub mod modes;
pub mod path;

pub use ablock::{build_a_block, kinetic_energy, lattice_dispersion, FluctuationVectors};
pub use branches::{
    band, classify_branches, diffusive_window, labels_at, pairing_error, stability_check,
    stability_over, Band, BranchLabel, Stability,
};
pub use error::SpectrumError;
pub use linalg::{diagonalize, Eigen};
pub use modes::{channel_weights, mode_set, mode_sets, ChannelWeights, ModeSet};
pub use path::{diagonal_path, path_norms};
