//! The Gutzwiller-Lindblad superoperator L[c].
//!
//! Element by element, with c_{n,m,σ,σ'} = ⟨n,σ|ρ|m,σ'⟩ and
//! `i ∂t c = L c`:
//!
//! * local energies ω_c(n−m) + U[n(n−1) − m(m−1)] + ω_at(σ−σ')/2 on the diagonal;
//! * Rabi coupling Ω(a†σ⁻ + aσ⁺) as a commutator;
//! * mean-field hopping −J z ψ [a†, ·] − J z ψ* [a, ·];
//! * dissipators Γ_l D[a], γ D[σ⁻], Γ_p D[σ⁺] multiplied by i.

use ddbh_core::{GutzwillerState, LocalBasis, ModelParams, SPINS};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Sparse triplet list.
type Triplets = Vec<(usize, usize, C64)>;

/// Precomputed pieces of L[c] for one parameter set.
///
/// `L[c] = S − ω_f Q + zJ (−ψ K₊ − ψ* K₋)` where `S` is state independent,
/// `K₊ = [a†, ·]`, `K₋ = [a, ·]` and `ω_f` is the frame frequency.
#[derive(Debug, Clone)]
pub struct Generator {
    pub basis: LocalBasis,
    pub frame: f64,
    zj: f64,
    stat: Triplets,
    /// Position of each row's diagonal entry inside `stat`.
    diag_pos: Vec<usize>,
    kp: Vec<(usize, usize, f64)>,
    km: Vec<(usize, usize, f64)>,
    psi_terms: Vec<(usize, f64)>,
}

impl Generator {
    /// Generator in the frame rotating at `frame` (0 for the lab frame).
    pub fn new(p: &ModelParams, frame: f64) -> Self {
        let b = p.basis();
        let nl = b.levels();
        let (wc, u, wat) = (p.omega_c, p.u_eff(), p.omega_at());
        let mut stat: Triplets = Vec::new();
        let mut diag_pos = Vec::with_capacity(b.dim_rho());
        let push = |st: &mut Triplets, r: usize, c: usize, v: C64| {
            if v != C64::new(0.0, 0.0) {
                st.push((r, c, v));
            }
        };
        for (r, n, m, s, sp) in b.elements() {
            let (nf, mf) = (n as f64, m as f64);
            let q = b.charge(r) as f64;
            // diagonal: energies, frame shift and the anticommutator parts
            let mut diag = C64::new(
                wc * (nf - mf)
                    + u * (nf * (nf - 1.0) - mf * (mf - 1.0))
                    + wat * (s - sp) as f64 / 2.0
                    - frame * q,
                0.0,
            );
            diag -= I * p.gamma_l * 0.5 * (nf + mf);
            diag -= I * p.gamma * (2 + s + sp) as f64 / 4.0;
            diag -= I * p.gamma_p * (2 - s - sp) as f64 / 4.0;
            diag_pos.push(stat.len());
            stat.push((r, r, diag));

            // Rabi: Ω[a†σ⁻ + aσ⁺, ρ]
            if s == -1 && n >= 1 {
                push(
                    &mut stat,
                    r,
                    b.idx(n - 1, m, 1, sp),
                    C64::new(p.rabi * nf.sqrt(), 0.0),
                );
            }
            if sp == 1 && m + 1 < nl {
                push(
                    &mut stat,
                    r,
                    b.idx(n, m + 1, s, -1),
                    C64::new(-p.rabi * (mf + 1.0).sqrt(), 0.0),
                );
            }
            if s == 1 && n + 1 < nl {
                push(
                    &mut stat,
                    r,
                    b.idx(n + 1, m, -1, sp),
                    C64::new(p.rabi * (nf + 1.0).sqrt(), 0.0),
                );
            }
            if sp == -1 && m >= 1 {
                push(
                    &mut stat,
                    r,
                    b.idx(n, m - 1, s, 1),
                    C64::new(-p.rabi * mf.sqrt(), 0.0),
                );
            }

            // jump terms
            if n + 1 < nl && m + 1 < nl {
                push(
                    &mut stat,
                    r,
                    b.idx(n + 1, m + 1, s, sp),
                    I * p.gamma_l * ((nf + 1.0) * (mf + 1.0)).sqrt(),
                );
            }
            if s == -1 && sp == -1 {
                push(&mut stat, r, b.idx(n, m, 1, 1), I * p.gamma);
            }
            if s == 1 && sp == 1 {
                push(&mut stat, r, b.idx(n, m, -1, -1), I * p.gamma_p);
            }
        }

        let mut kp = Vec::new();
        let mut km = Vec::new();
        for (r, n, m, s, sp) in b.elements() {
            let (nf, mf) = (n as f64, m as f64);
            // (K₊c)_{nm} = √n c_{n−1,m} − √(m+1) c_{n,m+1}
            if n >= 1 {
                kp.push((r, b.idx(n - 1, m, s, sp), nf.sqrt()));
            }
            if m + 1 < nl {
                kp.push((r, b.idx(n, m + 1, s, sp), -(mf + 1.0).sqrt()));
            }
            // (K₋c)_{nm} = √(n+1) c_{n+1,m} − √m c_{n,m−1}
            if n + 1 < nl {
                km.push((r, b.idx(n + 1, m, s, sp), (nf + 1.0).sqrt()));
            }
            if m >= 1 {
                km.push((r, b.idx(n, m - 1, s, sp), -mf.sqrt()));
            }
        }

        Generator {
            basis: b,
            frame,
            zj: p.zj(),
            stat,
            diag_pos,
            kp,
            km,
            psi_terms: psi_terms(b),
        }
    }

    /// Moves to a frame rotating at `frame`.
    pub fn set_frame(&mut self, frame: f64) {
        let shift = frame - self.frame;
        for (r, &k) in self.diag_pos.iter().enumerate() {
            self.stat[k].2 -= shift * self.basis.charge(r) as f64;
        }
        self.frame = frame;
    }

    pub fn psi(&self, c: &[C64]) -> C64 {
        self.psi_terms.iter().map(|&(i, w)| c[i] * w).sum()
    }

    /// Dense L for a given order parameter.
    pub fn matrix(&self, psi: C64) -> DMatrix<C64> {
        let d = self.basis.dim_rho();
        let mut l = DMatrix::zeros(d, d);
        for &(r, c, v) in &self.stat {
            l[(r, c)] += v;
        }
        let hp = -self.zj * psi;
        let hm = -self.zj * psi.conj();
        for &(r, c, v) in &self.kp {
            l[(r, c)] += hp * v;
        }
        for &(r, c, v) in &self.km {
            l[(r, c)] += hm * v;
        }
        l
    }

    /// `out = L[c] c`.
    pub fn apply(&self, c: &[C64], out: &mut [C64]) {
        let psi = self.psi(c);
        self.apply_with_psi(c, psi, out);
    }

    /// `out = L c` with L evaluated at a fixed ψ.
    pub fn apply_with_psi(&self, c: &[C64], psi: C64, out: &mut [C64]) {
        out.iter_mut().for_each(|x| *x = C64::new(0.0, 0.0));
        for &(r, col, v) in &self.stat {
            out[r] += v * c[col];
        }
        if self.zj != 0.0 {
            let hp = -self.zj * psi;
            let hm = -self.zj * psi.conj();
            for &(r, col, v) in &self.kp {
                out[r] += hp * (v * c[col]);
            }
            for &(r, col, v) in &self.km {
                out[r] += hm * (v * c[col]);
            }
        }
    }

    /// The maps K₊ = [a†, ·] and K₋ = [a, ·] applied to a vector.
    pub fn commutators(&self, c: &[C64]) -> (Vec<C64>, Vec<C64>) {
        let d = self.basis.dim_rho();
        let mut p = vec![C64::new(0.0, 0.0); d];
        let mut q = vec![C64::new(0.0, 0.0); d];
        for &(r, col, v) in &self.kp {
            p[r] += v * c[col];
        }
        for &(r, col, v) in &self.km {
            q[r] += v * c[col];
        }
        (p, q)
    }
}

/// (flat index, weight) pairs with ψ = Σ w c_i, i.e. √(n+1) on c_{n+1,n,σ,σ}.
pub fn psi_terms(b: LocalBasis) -> Vec<(usize, f64)> {
    let mut out = Vec::new();
    for n in 0..b.n_max {
        for s in SPINS {
            out.push((b.idx(n + 1, n, s, s), ((n + 1) as f64).sqrt()));
        }
    }
    out
}

/// L[c] in the lab frame.
pub fn build_superoperator(s: &GutzwillerState, p: &ModelParams) -> DMatrix<C64> {
    let g = Generator::new(p, 0.0);
    g.matrix(g.psi(&s.c))
}
