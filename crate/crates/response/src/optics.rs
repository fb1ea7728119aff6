//! Input-output amplitudes of a cavity probed through two mirrors.

use crate::error::ResponseError;
use num_complex::Complex64 as C64;

#[derive(Debug, Clone, PartialEq)]
pub struct Optics {
    pub t: Vec<C64>,
    pub r: Vec<C64>,
    /// |T|² + |R|² − 1.
    pub sumrule_violation: Vec<f64>,
}

/// T = −i η_L η_R* G_R and R = 1 + (η_L/η_R)* T.
pub fn transmittivity_reflectivity(
    g: &[C64],
    eta_l: C64,
    eta_r: C64,
) -> Result<Optics, ResponseError> {
    if eta_r == C64::new(0.0, 0.0) {
        return Err(ResponseError::ZeroMirror);
    }
    let mi = C64::new(0.0, -1.0);
    let ratio = (eta_l / eta_r).conj();
    let t: Vec<C64> = g.iter().map(|z| mi * eta_l * eta_r.conj() * z).collect();
    let r: Vec<C64> = t.iter().map(|x| 1.0 + ratio * x).collect();
    let sumrule_violation = t
        .iter()
        .zip(&r)
        .map(|(a, b)| a.norm_sqr() + b.norm_sqr() - 1.0)
        .collect();
    Ok(Optics {
        t,
        r,
        sumrule_violation,
    })
}

/// F = −i η_L η_R* Δ_R.
pub fn four_wave_mixing(delta: &[C64], eta_l: C64, eta_r: C64) -> Vec<C64> {
    let f = C64::new(0.0, -1.0) * eta_l * eta_r.conj();
    delta.iter().map(|d| f * d).collect()
}
