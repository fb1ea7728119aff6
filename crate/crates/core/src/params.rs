//! Physical couplings. Derived quantities (z, G, Γ_em, ω_at default) are
//! computed on demand so they can never go stale.

use crate::basis::LocalBasis;
use crate::error::CoreError;

#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    /// Hopping J.
    pub j: f64,
    /// On-site interaction, Hamiltonian term U·n(n−1). Ignored when `hard_core`.
    pub u: f64,
    pub hard_core: bool,
    /// Photon cutoff used when `hard_core` is false.
    pub n_max: usize,
    pub omega_c: f64,
    /// Emitter frequency; `None` means ω_c − zJ (pumping at the band bottom).
    pub omega_at: Option<f64>,
    /// Rabi coupling Ω.
    pub rabi: f64,
    pub gamma_l: f64,
    pub gamma_p: f64,
    pub gamma: f64,
    pub d: usize,
}

impl Default for ModelParams {
    /// Fig.-1 style couplings in units of Γ_p: Γ_l = 0.05, γ = 1e−3, Ω = 0.5,
    /// 2D hard-core lattice, ω_c = 10.
    fn default() -> Self {
        ModelParams {
            j: 0.0,
            u: 0.0,
            hard_core: true,
            n_max: 1,
            omega_c: 10.0,
            omega_at: None,
            rabi: 0.5,
            gamma_l: 0.05,
            gamma_p: 1.0,
            gamma: 1e-3,
            d: 2,
        }
    }
}

impl ModelParams {
    /// Coordination number of the hypercubic lattice.
    pub fn z(&self) -> f64 {
        2.0 * self.d as f64
    }

    pub fn zj(&self) -> f64 {
        self.z() * self.j
    }

    /// Sets J from a value of zJ.
    pub fn with_zj(mut self, zj: f64) -> Self {
        self.j = zj / self.z();
        self
    }

    /// Effective TLE-cavity coupling G = Ω²/(Γ_p Γ_l).
    pub fn coupling_g(&self) -> f64 {
        self.rabi * self.rabi / (self.gamma_p * self.gamma_l)
    }

    /// Perturbative pumping rate Γ_em = 4Ω²/Γ_p.
    pub fn gamma_em(&self) -> f64 {
        4.0 * self.rabi * self.rabi / self.gamma_p
    }

    pub fn omega_at(&self) -> f64 {
        self.omega_at.unwrap_or(self.omega_c - self.zj())
    }

    /// Emitter-cavity detuning ω_at − ω_c.
    pub fn detuning(&self) -> f64 {
        self.omega_at() - self.omega_c
    }

    /// Interaction entering the Hamiltonian (0 in the hard-core limit).
    pub fn u_eff(&self) -> f64 {
        if self.hard_core {
            0.0
        } else {
            self.u
        }
    }

    pub fn basis(&self) -> LocalBasis {
        LocalBasis {
            n_max: if self.hard_core { 1 } else { self.n_max },
        }
    }

    pub fn validate(&self) -> Result<(), CoreError> {
        let named = [
            ("J", self.j),
            ("U", self.u),
            ("omega_c", self.omega_c),
            ("Omega", self.rabi),
            ("Gamma_l", self.gamma_l),
            ("Gamma_p", self.gamma_p),
            ("gamma", self.gamma),
        ];
        for (k, v) in named {
            if !v.is_finite() {
                return Err(CoreError::InvalidParams(format!("{k} is not finite")));
            }
        }
        if let Some(w) = self.omega_at {
            if !w.is_finite() {
                return Err(CoreError::InvalidParams("omega_at is not finite".into()));
            }
        }
        for (k, v) in [
            ("Omega", self.rabi),
            ("Gamma_l", self.gamma_l),
            ("gamma", self.gamma),
        ] {
            if v < 0.0 {
                return Err(CoreError::InvalidParams(format!(
                    "{k} must be nonnegative, got {v}"
                )));
            }
        }
        if self.gamma_p <= 0.0 {
            return Err(CoreError::InvalidParams(format!(
                "Gamma_p must be positive, got {}",
                self.gamma_p
            )));
        }
        if self.d < 1 {
            return Err(CoreError::InvalidParams("d must be >= 1".into()));
        }
        if !self.hard_core && self.n_max < 1 {
            return Err(CoreError::InvalidParams("n_max must be >= 1".into()));
        }
        Ok(())
    }
}
