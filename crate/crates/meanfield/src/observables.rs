//! Local expectation values of a site density matrix.

use crate::error::MeanfieldError;
use crate::superop::psi_terms;
use ddbh_core::{GutzwillerState, SPINS};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

/// Eigenvalues in [−CLIP, 0) are treated as zero in the entropy.
const CLIP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservableSet {
    pub n0: f64,
    pub dn2: f64,
    pub sz: f64,
    pub sminus: C64,
    pub purity: f64,
    pub entropy: f64,
    /// Condensate density |ψ|².
    pub rho_c: f64,
}

/// ψ = Σ √(n+1) c_{n+1,n,σ,σ}.
pub fn order_parameter(s: &GutzwillerState) -> C64 {
    psi_terms(s.basis)
        .into_iter()
        .map(|(i, w)| s.c[i] * w)
        .sum()
}

pub fn density(s: &GutzwillerState) -> f64 {
    let mut n0 = 0.0;
    for n in 0..s.basis.levels() {
        for sg in SPINS {
            n0 += n as f64 * s.get(n, n, sg, sg).re;
        }
    }
    n0
}

pub fn purity(s: &GutzwillerState) -> f64 {
    s.c.iter().map(|x| x.norm_sqr()).sum()
}

/// Eigenvalues of the Hermitian part of the local density matrix, ascending.
pub fn density_eigenvalues(s: &GutzwillerState) -> Vec<f64> {
    let rho = s.density_matrix();
    let dl = rho.len();
    let m = DMatrix::from_fn(dl, dl, |r, c| 0.5 * (rho[r][c] + rho[c][r].conj()));
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn observables(s: &GutzwillerState) -> Result<ObservableSet, MeanfieldError> {
    let b = s.basis;
    let mut n0 = 0.0;
    let mut n2 = 0.0;
    let mut sz = 0.0;
    let mut sminus = C64::new(0.0, 0.0);
    for n in 0..b.levels() {
        let nf = n as f64;
        for sg in SPINS {
            let p = s.get(n, n, sg, sg).re;
            n0 += nf * p;
            n2 += nf * nf * p;
            sz += 0.5 * sg as f64 * p;
        }
        sminus += 0.5 * s.get(n, n, 1, -1);
    }
    let mut entropy = 0.0;
    for l in density_eigenvalues(s) {
        if l < -CLIP {
            return Err(MeanfieldError::Positivity(l));
        }
        if l > 0.0 {
            entropy -= l * l.ln();
        }
    }
    Ok(ObservableSet {
        n0,
        dn2: n2 - n0 * n0,
        sz,
        sminus,
        purity: purity(s),
        entropy,
        rho_c: order_parameter(s).norm_sqr(),
    })
}
