//! Hard-core bosons at equilibrium (XXZ form), mean field and linear modes.
//!
//! Serves as a closed-form reference for the driven lattice: at k → 0 the
//! Goldstone mode is acoustic, and every formula here is checked against a
//! direct eigen-solve of the 3×3 fluctuation problem.

use nalgebra::Matrix3;
use num_complex::Complex64 as C64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum EquilibriumError {
    #[error("coordination number {0} must be even and at least 2")]
    Coordination(usize),
    #[error("ω_c = {omega_c} outside the stable window [{lo}, {hi}]")]
    Domain { omega_c: f64, lo: f64, hi: f64 },
    #[error("expected a {want}-component wavevector, got {got}")]
    Dimension { got: usize, want: usize },
    #[error("invalid parameter: {0}")]
    Invalid(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardCoreParams {
    pub j: f64,
    /// Nearest-neighbour density interaction.
    pub ubar: f64,
    pub omega_c: f64,
    pub z: usize,
}

impl Default for HardCoreParams {
    fn default() -> Self {
        HardCoreParams {
            j: 1.0,
            ubar: 0.0,
            omega_c: 0.0,
            z: 4,
        }
    }
}

impl HardCoreParams {
    pub fn d(&self) -> usize {
        self.z / 2
    }

    fn zf(&self) -> f64 {
        self.z as f64
    }

    /// (lo, hi) = (−z(J+Ū), zJ).
    pub fn stability_window(&self) -> (f64, f64) {
        (-self.zf() * (self.j + self.ubar), self.zf() * self.j)
    }

    pub fn validate(&self) -> Result<(), EquilibriumError> {
        if self.z < 2 || !self.z.is_multiple_of(2) {
            return Err(EquilibriumError::Coordination(self.z));
        }
        if !(self.j.is_finite() && self.ubar.is_finite() && self.omega_c.is_finite()) {
            return Err(EquilibriumError::Invalid("non-finite parameter"));
        }
        if 2.0 * self.j + self.ubar <= 0.0 {
            return Err(EquilibriumError::Invalid("2J + Ū must be positive"));
        }
        let (lo, hi) = self.stability_window();
        if self.omega_c < lo || self.omega_c > hi {
            return Err(EquilibriumError::Domain {
                omega_c: self.omega_c,
                lo,
                hi,
            });
        }
        Ok(())
    }

    fn check_k(&self, k: &[f64]) -> Result<(), EquilibriumError> {
        if k.len() != self.d() {
            return Err(EquilibriumError::Dimension {
                got: k.len(),
                want: self.d(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardCoreState {
    pub n0: f64,
    pub psi0_sq: f64,
    /// Oscillation frequency of ψ (chemical potential).
    pub omega_eq: f64,
    pub energy_density: f64,
    /// Healing length along the lattice diagonal.
    pub xi: f64,
}

pub fn hc_meanfield(p: &HardCoreParams) -> Result<HardCoreState, EquilibriumError> {
    p.validate()?;
    let z = p.zf();
    let n0 = (z * p.j - p.omega_c) / (z * (2.0 * p.j + p.ubar));
    let psi0_sq = n0 * (1.0 - n0);
    Ok(HardCoreState {
        n0,
        psi0_sq,
        omega_eq: z * p.j * (2.0 * n0 - 1.0) + z * p.ubar * n0 + p.omega_c,
        energy_density: -z * p.j * psi0_sq + 0.5 * z * p.ubar * n0 * n0 + p.omega_c * n0,
        xi: std::f64::consts::PI / (2.0 * n0.sqrt().asin()),
    })
}

/// ε(k) = 4J Σ sin²(k_a/2).
pub fn kinetic(j: f64, k: &[f64]) -> f64 {
    4.0 * j * k.iter().map(|x| (0.5 * x).sin().powi(2)).sum::<f64>()
}

/// Ū(k) = 2Ū Σ cos k_a.
pub fn interaction_dispersion(ubar: f64, k: &[f64]) -> f64 {
    2.0 * ubar * k.iter().map(|x| x.cos()).sum::<f64>()
}

/// Fluctuation matrix acting on (u, v, w), in the frame rotating with ψ₀.
pub fn hc_bdg_matrix(p: &HardCoreParams, k: &[f64]) -> Result<Matrix3<f64>, EquilibriumError> {
    p.check_k(k)?;
    let s = hc_meanfield(p)?;
    let eps = kinetic(p.j, k);
    let a = (1.0 - 2.0 * s.n0) * eps;
    let b = (2.0 * p.zf() * p.j + interaction_dispersion(p.ubar, k)) * s.n0;
    let c = (1.0 - s.n0) * eps;
    Ok(Matrix3::new(a, 0.0, b, 0.0, -a, -b, c, -c, 0.0))
}

/// Eigenvalues of the fluctuation matrix, sorted by real then imaginary part.
///
/// Near k = 0 the matrix is close to nilpotent and loses half the digits
/// unbalanced; the diagonal similarity diag(1, 1, √(b/c)) makes it symmetric.
pub fn hc_bdg(p: &HardCoreParams, k: &[f64]) -> Result<[C64; 3], EquilibriumError> {
    let mut m = hc_bdg_matrix(p, k)?;
    let (b, c) = (m[(0, 2)], m[(2, 0)]);
    if b * c > 0.0 {
        let s = (b / c).sqrt();
        for i in 0..2 {
            m[(i, 2)] /= s;
            m[(2, i)] *= s;
        }
    }
    let ev = m.complex_eigenvalues();
    let mut out = [ev[0], ev[1], ev[2]];
    out.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(out)
}

/// Closed-form Goldstone branch.
pub fn hc_goldstone(p: &HardCoreParams, k: &[f64]) -> Result<f64, EquilibriumError> {
    p.check_k(k)?;
    let s = hc_meanfield(p)?;
    let z = p.zf();
    let eps = kinetic(p.j, k);
    let ph = (z * p.ubar + 2.0 * p.omega_c) / (z * (2.0 * p.j + p.ubar));
    let sq = ph * ph * eps * eps
        + 2.0 * s.psi0_sq * (2.0 * z * p.j + interaction_dispersion(p.ubar, k)) * eps;
    Ok(sq.max(0.0).sqrt())
}

/// c_s = √(2zJ(2J+Ū)) |ψ₀|.
pub fn sound_velocity(p: &HardCoreParams) -> Result<f64, EquilibriumError> {
    let s = hc_meanfield(p)?;
    let c2 = 2.0 * p.zf() * p.j * (2.0 * p.j + p.ubar) * s.psi0_sq;
    if c2 < 0.0 {
        let (lo, hi) = p.stability_window();
        return Err(EquilibriumError::Domain {
            omega_c: p.omega_c,
            lo,
            hi,
        });
    }
    Ok(c2.sqrt())
}
