//! Momentum paths.

/// `n` points along the zone diagonal (k, …, k) for k from `from` to `to`
/// inclusive.
pub fn diagonal_path(d: usize, n: usize, from: f64, to: f64) -> Vec<Vec<f64>> {
    match n {
        0 => Vec::new(),
        1 => vec![vec![from; d]],
        _ => (0..n)
            .map(|i| vec![from + (to - from) * i as f64 / (n - 1) as f64; d])
            .collect(),
    }
}

/// |k| of every path point.
pub fn path_norms(ks: &[Vec<f64>]) -> Vec<f64> {
    ks.iter()
        .map(|k| k.iter().map(|x| x * x).sum::<f64>().sqrt())
        .collect()
}
