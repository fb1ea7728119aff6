//! Index bookkeeping for c_{n,m,σ,σ'}.
//!
//! Flat order is (σ', σ, m, n) fastest to slowest:
//! `flat = ((n·N + m)·2 + s)·2 + s'` with `N = n_max + 1` and `s = (σ+1)/2`.
//! So `(0,0,−1,−1) -> 0`, `(0,0,−1,+1) -> 1`, `(0,0,+1,−1) -> 2`, ...

use crate::error::CoreError;

/// Emitter levels, ground (−1) first.
pub const SPINS: [i8; 2] = [-1, 1];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LocalBasis {
    pub n_max: usize,
}

#[inline]
fn sbit(s: i8) -> usize {
    ((s + 1) / 2) as usize
}

impl LocalBasis {
    pub fn new(n_max: usize) -> Result<Self, CoreError> {
        if n_max < 1 {
            return Err(CoreError::InvalidParams("n_max must be >= 1".into()));
        }
        Ok(LocalBasis { n_max })
    }

    pub fn hard_core() -> Self {
        LocalBasis { n_max: 1 }
    }

    /// Number of photon levels N = n_max + 1.
    pub fn levels(&self) -> usize {
        self.n_max + 1
    }

    pub fn spin_levels(&self) -> usize {
        2
    }

    pub fn dim_rho(&self) -> usize {
        self.levels() * self.levels() * 4
    }

    /// Dimension of the local Hilbert space, 2(n_max+1).
    pub fn dim_local(&self) -> usize {
        2 * self.levels()
    }

    pub fn flat_index(
        &self,
        n: usize,
        m: usize,
        sigma: i8,
        sigma_p: i8,
    ) -> Result<usize, CoreError> {
        let ok_s = |s: i8| s == 1 || s == -1;
        if n > self.n_max || m > self.n_max || !ok_s(sigma) || !ok_s(sigma_p) {
            return Err(CoreError::IndexOutOfRange {
                n,
                m,
                sigma,
                sigma_p,
                n_max: self.n_max,
            });
        }
        Ok(self.idx(n, m, sigma, sigma_p))
    }

    /// Unchecked variant of [`flat_index`](Self::flat_index) for hot loops.
    #[inline]
    pub fn idx(&self, n: usize, m: usize, sigma: i8, sigma_p: i8) -> usize {
        debug_assert!(n <= self.n_max && m <= self.n_max);
        ((n * self.levels() + m) * 2 + sbit(sigma)) * 2 + sbit(sigma_p)
    }

    pub fn unflatten(&self, flat: usize) -> Result<(usize, usize, i8, i8), CoreError> {
        if flat >= self.dim_rho() {
            return Err(CoreError::FlatOutOfRange(flat, self.dim_rho()));
        }
        Ok(self.unflat(flat))
    }

    #[inline]
    pub fn unflat(&self, flat: usize) -> (usize, usize, i8, i8) {
        let sp = (flat & 1) as i8 * 2 - 1;
        let s = ((flat >> 1) & 1) as i8 * 2 - 1;
        let nm = flat >> 2;
        (nm / self.levels(), nm % self.levels(), s, sp)
    }

    /// Iterate over all (flat, n, m, σ, σ') in storage order.
    pub fn elements(&self) -> impl Iterator<Item = (usize, usize, usize, i8, i8)> + '_ {
        (0..self.dim_rho()).map(move |i| {
            let (n, m, s, sp) = self.unflat(i);
            (i, n, m, s, sp)
        })
    }

    /// U(1) charge n − m + (σ − σ')/2 of an element.
    #[inline]
    pub fn charge(&self, flat: usize) -> i32 {
        let (n, m, s, sp) = self.unflat(flat);
        n as i32 - m as i32 + (s as i32 - sp as i32) / 2
    }

    /// Index of the transposed element (m, n, σ', σ).
    #[inline]
    pub fn transpose(&self, flat: usize) -> usize {
        let (n, m, s, sp) = self.unflat(flat);
        self.idx(m, n, sp, s)
    }

    /// Flat indices of the diagonal elements c_{n,n,σ,σ}.
    pub fn diagonal(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dim_local());
        for n in 0..self.levels() {
            for s in SPINS {
                out.push(self.idx(n, n, s, s));
            }
        }
        out
    }
}
