//! Eigenmodes of A_k and their channel weights.

use crate::ablock::{build_a_block, density_terms, hole_terms, project};
use crate::error::SpectrumError;
use crate::linalg::diagonalize;
use ddbh_core::{Execution, LocalBasis, ModelParams};
use ddbh_meanfield::superop::psi_terms;
use ddbh_meanfield::NessResult;
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelWeights {
    /// Density weight N.
    pub n: C64,
    /// Particle weight U.
    pub u: C64,
    /// Hole weight V.
    pub v: C64,
    /// (U + V)/2.
    pub amp: C64,
    /// (U − V)/2i.
    pub phase: C64,
    /// Particle-hole character (|U| − |V|)/(|U| + |V|); 0 when both vanish.
    pub c: f64,
}

#[derive(Debug, Clone)]
pub struct ModeSet {
    pub k: Vec<f64>,
    pub omega: Vec<C64>,
    /// Unit-norm right eigenvectors u_α as columns.
    pub right: DMatrix<C64>,
    /// Rows x_α^† with x_α^† u_β = δ_αβ.
    pub left: DMatrix<C64>,
    pub weights: Vec<ChannelWeights>,
    /// The mode carrying the trace direction (stationary-state normalization).
    pub trace_mode: usize,
    pub cond: f64,
}

impl ModeSet {
    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    /// x_α^† · w.
    pub fn left_dot(&self, alpha: usize, w: &[C64]) -> C64 {
        self.left.row(alpha).iter().zip(w).map(|(a, b)| a * b).sum()
    }

    /// x_α^†(this k) · u_β(other k).
    pub fn overlap(&self, alpha: usize, other: &ModeSet, beta: usize) -> C64 {
        self.left
            .row(alpha)
            .iter()
            .zip(other.right.column(beta).iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Spectrum of the full particle-hole problem: the A block and its
    /// transposed partner with eigenvalues −ω*.
    pub fn full_spectrum(&self) -> Vec<C64> {
        self.omega
            .iter()
            .copied()
            .chain(self.omega.iter().map(|w| -w.conj()))
            .collect()
    }

    /// Mode indices other than the trace mode.
    pub fn physical(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&a| a != self.trace_mode)
    }
}

pub fn channel_weights(right: &DMatrix<C64>, basis: LocalBasis) -> Vec<ChannelWeights> {
    let (eu, ev, en) = (psi_terms(basis), hole_terms(basis), density_terms(basis));
    right
        .column_iter()
        .map(|col| {
            let u = project(&eu, |i| col[i]);
            let v = project(&ev, |i| col[i]);
            let n = project(&en, |i| col[i]);
            let s = u.norm() + v.norm();
            ChannelWeights {
                n,
                u,
                v,
                amp: 0.5 * (u + v),
                phase: (u - v) / C64::new(0.0, 2.0),
                c: if s > 1e-12 {
                    (u.norm() - v.norm()) / s
                } else {
                    0.0
                },
            }
        })
        .collect()
}

pub fn mode_set(ness: &NessResult, p: &ModelParams, k: &[f64]) -> Result<ModeSet, SpectrumError> {
    let a = build_a_block(ness, p, k)?;
    let e = diagonalize(&a)?;
    let b = ness.c0.basis;
    let diag = b.diagonal();
    let trace_mode = (0..e.values.len())
        .max_by(|&x, &y| {
            let tx: C64 = diag.iter().map(|&i| e.right[(i, x)]).sum();
            let ty: C64 = diag.iter().map(|&i| e.right[(i, y)]).sum();
            tx.norm().total_cmp(&ty.norm())
        })
        .unwrap_or(0);
    let weights = channel_weights(&e.right, b);
    Ok(ModeSet {
        k: k.to_vec(),
        omega: e.values,
        right: e.right,
        left: e.left,
        weights,
        trace_mode,
        cond: e.cond,
    })
}

/// Mode sets along a list of wavevectors, evaluated independently per k.
pub fn mode_sets(
    ness: &NessResult,
    p: &ModelParams,
    ks: &[Vec<f64>],
    exec: Execution,
) -> Vec<Result<ModeSet, SpectrumError>> {
    exec.map(ks, |_, k| mode_set(ness, p, k))
}
