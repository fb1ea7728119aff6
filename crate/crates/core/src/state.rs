//! Vectorized single-site density matrix c_{n,m,σ,σ'} = ⟨n,σ|ρ|m,σ'⟩.

use crate::basis::{LocalBasis, SPINS};
use crate::error::CoreError;
use num_complex::Complex64 as C64;

#[derive(Debug, Clone, PartialEq)]
pub struct GutzwillerState {
    pub c: Vec<C64>,
    pub basis: LocalBasis,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// |c_{n,m,σ,σ'} − conj(c_{m,n,σ',σ})| above tolerance.
    Hermiticity {
        n: usize,
        m: usize,
        sigma: i8,
        sigma_p: i8,
        error: f64,
    },
    Trace {
        trace: C64,
    },
    NegativeDiagonal {
        n: usize,
        sigma: i8,
        value: f64,
    },
}

impl GutzwillerState {
    pub fn new(basis: LocalBasis, c: Vec<C64>) -> Result<Self, CoreError> {
        if c.len() != basis.dim_rho() {
            return Err(CoreError::DimensionMismatch {
                got: c.len(),
                want: basis.dim_rho(),
            });
        }
        Ok(GutzwillerState { c, basis })
    }

    pub fn zeros(basis: LocalBasis) -> Self {
        GutzwillerState {
            c: vec![C64::new(0.0, 0.0); basis.dim_rho()],
            basis,
        }
    }

    /// Pure product state |n,σ⟩⟨n,σ|.
    pub fn pure(basis: LocalBasis, n: usize, sigma: i8) -> Self {
        let mut s = Self::zeros(basis);
        s.set(n, n, sigma, sigma, C64::new(1.0, 0.0));
        s
    }

    pub fn maximally_mixed(basis: LocalBasis) -> Self {
        let mut s = Self::zeros(basis);
        let w = 1.0 / basis.dim_local() as f64;
        for i in basis.diagonal() {
            s.c[i] = C64::new(w, 0.0);
        }
        s
    }

    /// Maximally mixed diagonal plus a small real coherence `eps` on
    /// c_{1,0,σ,σ} (and its Hermitian partner). Needed to let the mean-field
    /// dynamics leave the ψ = 0 manifold.
    pub fn seeded(basis: LocalBasis, eps: f64) -> Self {
        let mut s = Self::maximally_mixed(basis);
        s.seed_coherence(eps);
        s
    }

    /// Adds `eps` to c_{1,0,σ,σ} and c_{0,1,σ,σ}.
    pub fn seed_coherence(&mut self, eps: f64) {
        for sg in SPINS {
            let a = self.basis.idx(1, 0, sg, sg);
            let b = self.basis.idx(0, 1, sg, sg);
            self.c[a] += eps;
            self.c[b] += eps;
        }
    }

    #[inline]
    pub fn get(&self, n: usize, m: usize, sigma: i8, sigma_p: i8) -> C64 {
        self.c[self.basis.idx(n, m, sigma, sigma_p)]
    }

    #[inline]
    pub fn set(&mut self, n: usize, m: usize, sigma: i8, sigma_p: i8, v: C64) {
        let i = self.basis.idx(n, m, sigma, sigma_p);
        self.c[i] = v;
    }

    pub fn trace(&self) -> C64 {
        self.basis.diagonal().into_iter().map(|i| self.c[i]).sum()
    }

    /// Divides by the trace.
    pub fn normalize(&mut self) {
        let t = self.trace();
        for x in &mut self.c {
            *x /= t;
        }
    }

    pub fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    /// Replaces c by (c + c^H)/2 elementwise.
    pub fn hermitize(&mut self) {
        for i in 0..self.c.len() {
            let j = self.basis.transpose(i);
            if j > i {
                let a = 0.5 * (self.c[i] + self.c[j].conj());
                self.c[i] = a;
                self.c[j] = a.conj();
            } else if j == i {
                self.c[i] = C64::new(self.c[i].re, 0.0);
            }
        }
    }

    pub fn hermiticity_error(&self) -> f64 {
        (0..self.c.len())
            .map(|i| (self.c[i] - self.c[self.basis.transpose(i)].conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn norm(&self) -> f64 {
        self.c.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Local density matrix as a row-major dense matrix over |n,σ⟩,
    /// row index `2n + (σ+1)/2`.
    pub fn density_matrix(&self) -> Vec<Vec<C64>> {
        let dl = self.basis.dim_local();
        let mut rho = vec![vec![C64::new(0.0, 0.0); dl]; dl];
        for (i, n, m, s, sp) in self.basis.elements() {
            let r = 2 * n + ((s + 1) / 2) as usize;
            let c = 2 * m + ((sp + 1) / 2) as usize;
            rho[r][c] = self.c[i];
        }
        rho
    }
}

/// Checks Hermiticity, unit trace and nonnegative diagonal within `tol`.
pub fn validate_state(s: &GutzwillerState, tol: f64) -> Vec<Violation> {
    let b = s.basis;
    let mut out = Vec::new();
    for (i, n, m, sg, sp) in b.elements() {
        let j = b.transpose(i);
        if j < i {
            continue;
        }
        let e = (s.c[i] - s.c[j].conj()).norm();
        if e > tol {
            out.push(Violation::Hermiticity {
                n,
                m,
                sigma: sg,
                sigma_p: sp,
                error: e,
            });
        }
    }
    let tr = s.trace();
    if (tr - 1.0).norm() > tol {
        out.push(Violation::Trace { trace: tr });
    }
    for n in 0..b.levels() {
        for sg in SPINS {
            let v = s.get(n, n, sg, sg).re;
            if v < -tol {
                out.push(Violation::NegativeDiagonal {
                    n,
                    sigma: sg,
                    value: v,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_excited_is_valid() {
        let s = GutzwillerState::pure(LocalBasis::hard_core(), 1, 1);
        assert!(validate_state(&s, 1e-12).is_empty());
    }

    #[test]
    fn mixed_is_valid() {
        let s = GutzwillerState::maximally_mixed(LocalBasis::hard_core());
        assert!(validate_state(&s, 1e-12).is_empty());
        assert!(validate_state(&GutzwillerState::seeded(s.basis, 1e-3), 1e-12).is_empty());
    }

    #[test]
    fn hermiticity_violation_reported() {
        let mut s = GutzwillerState::maximally_mixed(LocalBasis::hard_core());
        s.set(0, 1, 1, -1, C64::new(0.3, 0.0));
        s.set(1, 0, -1, 1, C64::new(0.2, 0.0));
        let v = validate_state(&s, 1e-8);
        assert_eq!(v.len(), 1);
        assert!(matches!(v[0], Violation::Hermiticity { .. }));
    }

    #[test]
    fn trace_and_negativity() {
        let mut s = GutzwillerState::zeros(LocalBasis::hard_core());
        s.set(0, 0, -1, -1, C64::new(1.5, 0.0));
        s.set(1, 1, 1, 1, C64::new(-0.5, 0.0));
        let v = validate_state(&s, 1e-8);
        assert!(v
            .iter()
            .any(|x| matches!(x, Violation::NegativeDiagonal { .. })));
        s.set(1, 1, 1, 1, C64::new(0.5, 0.0));
        let v = validate_state(&s, 1e-8);
        assert!(matches!(v[..], [Violation::Trace { .. }]));
    }

    #[test]
    fn hermitize_fixes_pairs() {
        let mut s = GutzwillerState::maximally_mixed(LocalBasis::hard_core());
        s.set(0, 1, 1, -1, C64::new(0.3, 0.1));
        s.hermitize();
        assert!(s.hermiticity_error() < 1e-15);
        assert_eq!(s.get(1, 0, -1, 1), C64::new(0.15, -0.05));
    }
}
