//! Mean-field (Gutzwiller) dynamics of the pumped cavity array.
//!
//! The site density matrix obeys `i ∂t c = L[c] c` where `L` depends on the
//! state only through the order parameter ψ. Propagation happens in a frame
//! rotating at ω_c, which is exact because `L` commutes with the U(1) charge
//! `Q = n − m + (σ − σ')/2`; it only removes the fast cavity phase.

pub mod analytic;
pub mod error;
pub mod observables;
pub mod propagate;
pub mod scan;
pub mod superop;

pub use analytic::{analytic_ip_ness, critical_hopping_estimate};
pub use error::MeanfieldError;
pub use observables::{observables, order_parameter, ObservableSet};
pub use propagate::{
    evolve, extract_limit_cycle_frequency, propagate_to_ness, rotating_frame_transform, NessResult,
    Phase, PropagateOptions,
};
pub use scan::{find_jm, hole_superfluid_flags, phase_scan, ScanOptions, ScanPoint};
pub use superop::{build_superoperator, Generator};
