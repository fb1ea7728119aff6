//! Residues and pole sums.

use crate::error::ResponseError;
use ddbh_core::{LocalBasis, ModelParams};
use ddbh_meanfield::NessResult;
use ddbh_spectrum::{build_a_block, FluctuationVectors, ModeSet};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    /// N₀ = (n − m) c₀.
    Density,
    /// P₀ = [a†, c₀].
    Particle,
    /// Q₀ = [a, c₀].
    Hole,
}

/// x_α^† · w for the chosen perturbation vector, one entry per mode.
pub fn perturbation_weights(fv: &FluctuationVectors, ms: &ModeSet, channel: Channel) -> Vec<C64> {
    let w = match channel {
        Channel::Density => &fv.n0,
        Channel::Particle => &fv.p0,
        Channel::Hole => &fv.q0,
    };
    (0..ms.len()).map(|a| ms.left_dot(a, w)).collect()
}

/// Residue table of one k-point.
#[derive(Debug, Clone)]
pub struct Residues {
    /// Normal weights Z_α = U_α (x_α^† P₀).
    pub z: Vec<C64>,
    /// Anomalous weights Z̄_α = V_α (x_α^† P₀).
    pub zbar: Vec<C64>,
    /// Quasihole weights Y_α = V_α (y_α^† P₀*), y_α the transposed left vector.
    pub y: Vec<C64>,
    /// Density weights N_α (x_α^† N₀).
    pub dens: Vec<C64>,
}

impl Residues {
    pub fn z_sum(&self) -> C64 {
        self.z.iter().sum()
    }
}

pub fn residues(fv: &FluctuationVectors, ms: &ModeSet, basis: LocalBasis) -> Residues {
    let xp = perturbation_weights(fv, ms, Channel::Particle);
    let xn = perturbation_weights(fv, ms, Channel::Density);
    let n = ms.right.nrows();
    let tr: Vec<usize> = (0..n).map(|i| basis.transpose(i)).collect();
    let p0c: Vec<C64> = fv.p0.iter().map(|z| z.conj()).collect();
    let mut z = Vec::with_capacity(ms.len());
    let mut zbar = Vec::with_capacity(ms.len());
    let mut y = Vec::with_capacity(ms.len());
    let mut dens = Vec::with_capacity(ms.len());
    for a in 0..ms.len() {
        let w = ms.weights[a];
        z.push(w.u * xp[a]);
        zbar.push(w.v * xp[a]);
        let yp: C64 = (0..n).map(|i| ms.left[(a, tr[i])] * p0c[i]).sum();
        y.push(w.v * yp);
        dens.push(w.n * xn[a]);
    }
    Residues { z, zbar, y, dens }
}

fn pole_sum(w: &[C64], poles: &[C64], omega: f64) -> Result<C64, ResponseError> {
    let mut s = C64::new(0.0, 0.0);
    for (r, p) in w.iter().zip(poles) {
        let d = omega - p;
        if d == C64::new(0.0, 0.0) {
            if *r == C64::new(0.0, 0.0) {
                continue;
            }
            return Err(ResponseError::Pole(*p));
        }
        s += r / d;
    }
    Ok(s)
}

/// Σ_α w_α/(ω − ω_α) on a frequency grid.
pub fn pole_sweep(w: &[C64], poles: &[C64], omegas: &[f64]) -> Result<Vec<C64>, ResponseError> {
    omegas.iter().map(|&o| pole_sum(w, poles, o)).collect()
}

/// χ_n(ω) = Σ_α N_α (x_α^† N₀)/(ω − ω_α).
pub fn density_response(
    r: &Residues,
    ms: &ModeSet,
    omegas: &[f64],
) -> Result<Vec<C64>, ResponseError> {
    pole_sweep(&r.dens, &ms.omega, omegas)
}

/// G_R(ω) = Σ_α Z_α/(ω − ω_α).
pub fn retarded_green(
    r: &Residues,
    ms: &ModeSet,
    omegas: &[f64],
) -> Result<Vec<C64>, ResponseError> {
    pole_sweep(&r.z, &ms.omega, omegas)
}

/// Δ_R(ω) = Σ_α Z̄_α/(ω − ω_α).
pub fn anomalous_green(
    r: &Residues,
    ms: &ModeSet,
    omegas: &[f64],
) -> Result<Vec<C64>, ResponseError> {
    pole_sweep(&r.zbar, &ms.omega, omegas)
}

/// G_R by solving (ω − A_k) x = P₀ and projecting x on the particle channel.
pub fn retarded_green_direct(
    ness: &NessResult,
    p: &ModelParams,
    k: &[f64],
    omega: f64,
) -> Result<C64, ResponseError> {
    let a = build_a_block(ness, p, k)?;
    let fv = FluctuationVectors::new(&ness.c0, p);
    let n = a.nrows();
    let m = DMatrix::<C64>::identity(n, n) * C64::new(omega, 0.0) - a;
    let rhs = DVector::from_vec(fv.p0.clone());
    let x = m.lu().solve(&rhs).ok_or(ResponseError::Singular(omega))?;
    Ok(fv.e_u.iter().map(|&(i, w)| x[i] * w).sum())
}
