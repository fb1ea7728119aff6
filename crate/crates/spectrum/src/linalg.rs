//! Dense non-Hermitian eigendecomposition.
//!
//! Complex Schur form `A = Q T Q*` (nalgebra), eigenvectors of the triangular
//! factor by back substitution, left vectors as rows of the inverse of the
//! right-vector matrix so that `left · right = I`.

use crate::error::SpectrumError;
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

/// Largest acceptable condition number of the right-vector matrix.
pub const MAX_COND: f64 = 1e10;

#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<C64>,
    /// Unit-norm right eigenvectors as columns.
    pub right: DMatrix<C64>,
    /// Rows are x_α^† with x_α^† u_β = δ_αβ.
    pub left: DMatrix<C64>,
    /// 2-norm condition number of `right`.
    pub cond: f64,
}

/// Eigenvalues only (no conditioning requirement).
pub fn eigenvalues(a: &DMatrix<C64>) -> Result<Vec<C64>, SpectrumError> {
    if !a.is_square() {
        return Err(SpectrumError::NotSquare(a.nrows(), a.ncols()));
    }
    let (_, t) = a.clone().schur().unpack();
    Ok((0..t.nrows()).map(|i| t[(i, i)]).collect())
}

pub fn diagonalize(a: &DMatrix<C64>) -> Result<Eigen, SpectrumError> {
    if !a.is_square() {
        return Err(SpectrumError::NotSquare(a.nrows(), a.ncols()));
    }
    let n = a.nrows();
    let (q, t) = a.clone().schur().unpack();
    let values: Vec<C64> = (0..n).map(|i| t[(i, i)]).collect();
    let anorm = t
        .iter()
        .map(|x| x.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let small = f64::EPSILON * anorm;

    let mut y = DMatrix::<C64>::zeros(n, n);
    for k in 0..n {
        let lam = values[k];
        y[(k, k)] = C64::new(1.0, 0.0);
        for j in (0..k).rev() {
            let mut s = C64::new(0.0, 0.0);
            for l in j + 1..=k {
                s += t[(j, l)] * y[(l, k)];
            }
            let mut den = t[(j, j)] - lam;
            if den.norm() < small {
                den = C64::new(small, 0.0);
            }
            y[(j, k)] = -s / den;
        }
    }
    let mut right = q * y;
    for mut col in right.column_iter_mut() {
        let nrm = col.norm();
        col /= C64::new(nrm, 0.0);
    }

    let sv = right.clone().svd(false, false).singular_values;
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let smin = sv.iter().copied().fold(f64::INFINITY, f64::min);
    let cond = if smin > 0.0 {
        smax / smin
    } else {
        f64::INFINITY
    };
    if cond > MAX_COND {
        return Err(SpectrumError::Degenerate {
            cond,
            cluster: closest_cluster(&values),
        });
    }
    let left = right
        .clone()
        .try_inverse()
        .ok_or_else(|| SpectrumError::Degenerate {
            cond,
            cluster: closest_cluster(&values),
        })?;
    Ok(Eigen {
        values,
        right,
        left,
        cond,
    })
}

/// The two closest eigenvalues plus any others within the same distance.
fn closest_cluster(values: &[C64]) -> Vec<C64> {
    let mut best = (f64::INFINITY, 0, 0);
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            let d = (values[i] - values[j]).norm();
            if d < best.0 {
                best = (d, i, j);
            }
        }
    }
    if best.0.is_infinite() {
        return values.to_vec();
    }
    let centre = values[best.1];
    let radius = best.0.max(1e-12) * 10.0;
    values
        .iter()
        .copied()
        .filter(|v| (v - centre).norm() <= radius)
        .collect()
}
