//! Density of states and its sum rule.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

/// A(ω) = −Im G_R(ω)/π.
pub fn dos(g: &[C64]) -> Vec<f64> {
    g.iter().map(|z| -z.im / PI).collect()
}

/// Mean of A(k, ω) over the sampled k-points (rows of `a`).
pub fn local_dos(a: &[Vec<f64>]) -> Vec<f64> {
    let nk = a.len().max(1) as f64;
    let nw = a.first().map_or(0, |r| r.len());
    (0..nw)
        .map(|j| a.iter().map(|r| r[j]).sum::<f64>() / nk)
        .collect()
}

/// Exact ∫_a^b of −Im[Σ Z_α/(ω − ω_α)]/π. Poles with Im ω_α < 0 keep the
/// logarithm on its principal branch.
pub fn pole_window_integral(z: &[C64], poles: &[C64], a: f64, b: f64) -> f64 {
    let s: C64 = z
        .iter()
        .zip(poles)
        .map(|(zz, p)| zz * ((C64::new(b, 0.0) - p).ln() - (C64::new(a, 0.0) - p).ln()))
        .sum();
    -s.im / PI
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DosSummary {
    /// Trapezoid integral of the local DoS over the frequency window.
    pub window_integral: f64,
    /// Expected total weight 1 − 2n₀.
    pub expected: f64,
    /// Weight outside the window, from the pole sums (k-averaged).
    pub tail_estimate: f64,
}

impl DosSummary {
    pub fn deviation(&self) -> f64 {
        self.window_integral - self.expected
    }
}

pub fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum()
}
