//! Closed forms for the hard-core insulating steady state (ψ = 0).

use crate::error::MeanfieldError;
use ddbh_core::{GutzwillerState, ModelParams};
use num_complex::Complex64 as C64;

/// Unnormalized five-coefficient IP steady state, divided by its trace.
///
/// The formulas are written for a general emitter-cavity detuning
/// Δ = ω_at − ω_c; with the default ω_at = ω_c − zJ this is Δ = −zJ.
pub fn analytic_ip_ness(p: &ModelParams) -> Result<GutzwillerState, MeanfieldError> {
    if !p.hard_core {
        return Err(MeanfieldError::NotHardCore);
    }
    if p.rabi == 0.0 {
        return Err(MeanfieldError::Undefined("Omega = 0"));
    }
    p.validate()?;
    let (gl, gp, g, om, dl) = (p.gamma_l, p.gamma_p, p.gamma, p.rabi, p.detuning());
    let c01 = C64::new(dl * gl / (gp * om), (gp + gl + g) * gl / (2.0 * gp * om));
    let c00ee = g / gp
        + gp * gl / (4.0 * om * om)
            * ((2.0 * om / gp).powi(2) + (1.0 + (gl + g) / gp).powi(2) + (2.0 * dl / gp).powi(2));
    let c00gg = g / gp * c00ee + (gl + g) * gl / (gp * gp);
    let c11gg = (gl + g) / gp;
    let c11ee = 1.0;

    let mut s = GutzwillerState::zeros(p.basis());
    s.set(0, 1, 1, -1, c01);
    s.set(1, 0, -1, 1, c01.conj());
    s.set(0, 0, 1, 1, c00ee.into());
    s.set(0, 0, -1, -1, c00gg.into());
    s.set(1, 1, -1, -1, c11gg.into());
    s.set(1, 1, 1, 1, c11ee.into());
    Ok(s.normalized())
}

/// Perturbative estimate of the critical bandwidth, returned as zJ_c:
/// zJ_c = Γ_p/2 · √(Γ_em/Γ_l − 1). `None` when Γ_em < Γ_l (no lasing) or
/// Γ_l = 0.
pub fn critical_hopping_estimate(p: &ModelParams) -> Option<f64> {
    if p.gamma_l <= 0.0 {
        return None;
    }
    let r = p.gamma_em() / p.gamma_l;
    if r < 1.0 {
        return None;
    }
    Some(0.5 * p.gamma_p * (r - 1.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios() {
        let p = ModelParams::default().with_zj(0.5);
        let s = analytic_ip_ness(&p).unwrap();
        let r = s.get(1, 1, -1, -1) / s.get(1, 1, 1, 1);
        assert!((r.re - (0.05 + 1e-3)).abs() < 1e-14);
        assert!((s.trace() - 1.0).norm() < 1e-14);
        assert!(s.hermiticity_error() < 1e-16);
    }

    #[test]
    fn zero_rabi_undefined() {
        let p = ModelParams {
            rabi: 0.0,
            ..ModelParams::default()
        };
        assert!(analytic_ip_ness(&p).is_err());
    }

    #[test]
    fn critical_estimate() {
        let p = ModelParams::default();
        let zjc = critical_hopping_estimate(&p).unwrap();
        assert!((zjc - 0.5 * 19f64.sqrt()).abs() < 1e-12);
        // Γ_em = Γ_l exactly
        let q = ModelParams {
            gamma_l: 1.0,
            ..ModelParams::default()
        };
        assert_eq!(critical_hopping_estimate(&q), Some(0.0));
        let w = ModelParams {
            rabi: 0.1,
            ..ModelParams::default()
        };
        assert_eq!(critical_hopping_estimate(&w), None);
    }
}
