//! Linear response of a steady state from the eigenmodes of A_k.
//!
//! Every response function is a pole sum `Σ_α W_α / (ω − ω_α)` whose
//! residues pair a channel weight of mode α (N, U or V) with the overlap of
//! its left eigenvector with a perturbation vector built from c₀.

pub mod dos;
pub mod error;
pub mod green;
pub mod map;
pub mod optics;

pub use dos::{dos, local_dos, pole_window_integral, trapezoid, DosSummary};
pub use error::ResponseError;
pub use green::{
    anomalous_green, density_response, perturbation_weights, pole_sweep, residues, retarded_green,
    retarded_green_direct, Channel, Residues,
};
pub use map::{critical_frequency, default_omega_grid, response_map, ResponseMap};
pub use optics::{four_wave_mixing, transmittivity_reflectivity, Optics};
