//! The particle block A_k of the fluctuation superoperator.

use crate::error::SpectrumError;
use ddbh_core::{GutzwillerState, LocalBasis, ModelParams, SPINS};
use ddbh_meanfield::superop::psi_terms;
use ddbh_meanfield::{Generator, NessResult};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

/// Free-particle hopping dispersion J(k) = −2J Σ_a cos k_a = ε_kin(k) − zJ.
pub fn lattice_dispersion(j: f64, k: &[f64]) -> f64 {
    -2.0 * j * k.iter().map(|x| x.cos()).sum::<f64>()
}

/// Kinetic energy ε(k) = 4J Σ_a sin²(k_a/2), zero at k = 0.
pub fn kinetic_energy(j: f64, k: &[f64]) -> f64 {
    4.0 * j * k.iter().map(|x| (0.5 * x).sin().powi(2)).sum::<f64>()
}

/// Vectors built from the steady state that enter A_k and the response
/// functions.
#[derive(Debug, Clone)]
pub struct FluctuationVectors {
    /// P₀ = [a†, c₀]: √n c_{n−1,m} − √(m+1) c_{n,m+1}.
    pub p0: Vec<C64>,
    /// Q₀ = [a, c₀]: √(n+1) c_{n+1,m} − √m c_{n,m−1}.
    pub q0: Vec<C64>,
    /// N₀ = (n − m) c₀.
    pub n0: Vec<C64>,
    /// Particle projection U = Σ √(n+1) u_{n+1,n,σ,σ}.
    pub e_u: Vec<(usize, f64)>,
    /// Hole projection V = Σ √(n+1) u_{n,n+1,σ,σ}.
    pub e_v: Vec<(usize, f64)>,
    /// Density projection N = Σ n u_{n,n,σ,σ}.
    pub e_n: Vec<(usize, f64)>,
}

impl FluctuationVectors {
    pub fn new(c0: &GutzwillerState, p: &ModelParams) -> Self {
        let b = c0.basis;
        let g = Generator::new(p, 0.0);
        let (p0, q0) = g.commutators(&c0.c);
        let n0 = b
            .elements()
            .map(|(i, n, m, _, _)| c0.c[i] * (n as f64 - m as f64))
            .collect();
        FluctuationVectors {
            p0,
            q0,
            n0,
            e_u: psi_terms(b),
            e_v: hole_terms(b),
            e_n: density_terms(b),
        }
    }
}

pub fn hole_terms(b: LocalBasis) -> Vec<(usize, f64)> {
    let mut out = Vec::new();
    for n in 0..b.n_max {
        for s in SPINS {
            out.push((b.idx(n, n + 1, s, s), ((n + 1) as f64).sqrt()));
        }
    }
    out
}

pub fn density_terms(b: LocalBasis) -> Vec<(usize, f64)> {
    let mut out = Vec::new();
    for n in 1..b.levels() {
        for s in SPINS {
            out.push((b.idx(n, n, s, s), n as f64));
        }
    }
    out
}

/// Contraction Σ w u_i over a sparse projection.
pub fn project(terms: &[(usize, f64)], u: impl Fn(usize) -> C64) -> C64 {
    terms.iter().map(|&(i, w)| u(i) * w).sum()
}

/// A_k = L[c₀] + J(k)(P₀ e_Uᵀ + Q₀ e_Vᵀ) − ω₀ Q, in the frame co-rotating
/// with the steady state.
pub fn build_a_block(
    ness: &NessResult,
    p: &ModelParams,
    k: &[f64],
) -> Result<DMatrix<C64>, SpectrumError> {
    if k.len() != p.d {
        return Err(SpectrumError::Dimension {
            got: k.len(),
            want: p.d,
        });
    }
    let c0 = &ness.c0;
    let b = c0.basis;
    let g = Generator::new(p, ness.omega0);
    let mut a = g.matrix(g.psi(&c0.c));
    let jk = lattice_dispersion(p.j, k);
    if jk != 0.0 {
        let fv = FluctuationVectors::new(c0, p);
        for r in 0..b.dim_rho() {
            for &(col, w) in &fv.e_u {
                a[(r, col)] += fv.p0[r] * (jk * w);
            }
            for &(col, w) in &fv.e_v {
                a[(r, col)] += fv.q0[r] * (jk * w);
            }
        }
    }
    Ok(a)
}
