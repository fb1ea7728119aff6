//! Brute-force single-site Lindbladian built from Kronecker products, used as
//! an independent oracle for the element-wise superoperator.

use ddbh_core::{LocalBasis, ModelParams, C64};
use nalgebra::DMatrix;

fn r(n: usize, s: i8) -> usize {
    2 * n + ((s + 1) / 2) as usize
}

/// Operators on |n,σ⟩: (a, σ⁻).
pub fn local_ops(b: LocalBasis) -> (DMatrix<C64>, DMatrix<C64>) {
    let dl = b.dim_local();
    let mut a = DMatrix::zeros(dl, dl);
    let mut sm = DMatrix::zeros(dl, dl);
    for n in 0..b.levels() {
        for s in [-1i8, 1] {
            if n >= 1 {
                a[(r(n - 1, s), r(n, s))] = C64::new((n as f64).sqrt(), 0.0);
            }
        }
        sm[(r(n, -1), r(n, 1))] = C64::new(1.0, 0.0);
    }
    (a, sm)
}

fn kron(x: &DMatrix<C64>, y: &DMatrix<C64>) -> DMatrix<C64> {
    x.kronecker(y)
}

/// Generator G with ∂t vec(ρ) = G vec(ρ), expressed in the flat c ordering,
/// for the mean-field Hamiltonian at a fixed order parameter ψ.
pub fn brute_generator(p: &ModelParams, psi: C64) -> DMatrix<C64> {
    let b = p.basis();
    let dl = b.dim_local();
    let (a, sm) = local_ops(b);
    let ad = a.adjoint();
    let sp = sm.adjoint();
    let id = DMatrix::<C64>::identity(dl, dl);
    let num = &ad * &a;
    let zpsi = psi * p.zj();
    let h = &num * C64::from(p.omega_c)
        + (&ad * &ad * &a * &a) * C64::from(p.u_eff())
        + (&sp * &sm) * C64::from(p.omega_at())
        + (&ad * &sm + &a * &sp) * C64::from(p.rabi)
        - &ad * zpsi
        - &a * zpsi.conj();
    let i = C64::new(0.0, 1.0);
    // row-major vec: vec(AρB) = (A ⊗ Bᵀ) vec(ρ)
    let mut g = (kron(&h, &id) - kron(&id, &h.transpose())) * (-i);
    for (rate, o) in [(p.gamma_l, &a), (p.gamma, &sm), (p.gamma_p, &sp)] {
        let od = o.adjoint();
        let oo = &od * o;
        let d = kron(o, &od.transpose())
            - (kron(&oo, &id) + kron(&id, &oo.transpose())) * C64::from(0.5);
        g += d * C64::from(rate);
    }
    // permute to flat ordering
    let dim = b.dim_rho();
    let map: Vec<usize> = (0..dim)
        .map(|f| {
            let (n, m, s, sp_) = b.unflat(f);
            r(n, s) * dl + r(m, sp_)
        })
        .collect();
    DMatrix::from_fn(dim, dim, |x, y| g[(map[x], map[y])])
}
