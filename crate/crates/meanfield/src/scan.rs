//! Steady states over a parameter grid.

use crate::error::MeanfieldError;
use crate::observables::{observables, ObservableSet};
use crate::propagate::{propagate_to_ness, NessResult, Phase, PropagateOptions};
use ddbh_core::{Execution, GutzwillerState, ModelParams};

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub propagate: PropagateOptions,
    /// Start each point from the previous converged state of its chain.
    pub warm_start: bool,
    /// Points per chain (one sweep row); 0 puts the whole grid in one chain.
    /// Chains run independently, points inside a chain run in order.
    pub chain_len: usize,
    /// Coherence seed added to every initial state.
    pub seed_eps: f64,
    pub exec: Execution,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            propagate: PropagateOptions::default(),
            warm_start: true,
            chain_len: 0,
            seed_eps: 1e-3,
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScanPoint {
    pub index: usize,
    pub params: ModelParams,
    pub outcome: Result<(NessResult, ObservableSet), MeanfieldError>,
    /// Whether the run started from a neighbour's steady state.
    pub warm: bool,
}

impl ScanPoint {
    pub fn ness(&self) -> Option<&NessResult> {
        self.outcome.as_ref().ok().map(|(n, _)| n)
    }

    pub fn obs(&self) -> Option<&ObservableSet> {
        self.outcome.as_ref().ok().map(|(_, o)| o)
    }

    pub fn ok(&self) -> bool {
        matches!(&self.outcome, Ok((n, _)) if n.converged)
    }
}

fn run_point(
    index: usize,
    p: &ModelParams,
    prev: Option<&GutzwillerState>,
    opts: &ScanOptions,
) -> ScanPoint {
    let (mut init, warm) = match prev {
        Some(c) if opts.warm_start && c.basis == p.basis() => (c.clone(), true),
        _ => (GutzwillerState::maximally_mixed(p.basis()), false),
    };
    init.hermitize();
    init.seed_coherence(opts.seed_eps);
    init.normalize();
    let outcome = propagate_to_ness(&init, p, &opts.propagate)
        .and_then(|n| observables(&n.c0).map(|o| (n, o)));
    ScanPoint {
        index,
        params: p.clone(),
        outcome,
        warm,
    }
}

/// Runs `propagate_to_ness` on every grid point. Output is ordered by grid
/// index and does not depend on the number of workers.
pub fn phase_scan(grid: &[ModelParams], opts: &ScanOptions) -> Vec<ScanPoint> {
    if !opts.warm_start {
        return opts.exec.map(grid, |i, p| run_point(i, p, None, opts));
    }
    let len = if opts.chain_len == 0 {
        grid.len().max(1)
    } else {
        opts.chain_len
    };
    let chains: Vec<(usize, &[ModelParams])> = grid
        .chunks(len)
        .enumerate()
        .map(|(k, c)| (k * len, c))
        .collect();
    let runs = opts.exec.map(&chains, |_, &(start, chain)| {
        let mut out: Vec<ScanPoint> = Vec::with_capacity(chain.len());
        for (j, p) in chain.iter().enumerate() {
            let prev = out
                .last()
                .filter(|pt| pt.ok())
                .and_then(|pt| pt.ness())
                .map(|n| &n.c0);
            let pt = run_point(start + j, p, prev, opts);
            out.push(pt);
        }
        out
    });
    runs.into_iter().flatten().collect()
}

/// Index of the ρ_c maximum among superfluid points of a 1D sweep.
pub fn find_jm(points: &[ScanPoint]) -> Option<usize> {
    points
        .iter()
        .enumerate()
        .filter_map(|(i, pt)| match &pt.outcome {
            Ok((n, o)) if n.phase == Phase::Sfp => Some((i, o.rho_c)),
            _ => None,
        })
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(i, _)| i)
}

/// Hole-superfluid flags along a 1D J sweep: dρ_c/dJ > 0 while dn₀/dJ < 0.
pub fn hole_superfluid_flags(points: &[ScanPoint]) -> Vec<bool> {
    let n = points.len();
    (0..n)
        .map(|i| {
            let sfp = matches!(points[i].ness(), Some(r) if r.phase == Phase::Sfp);
            if !sfp || n < 2 {
                return false;
            }
            let (a, b) = if i == 0 {
                (0, 1)
            } else if i == n - 1 {
                (n - 2, n - 1)
            } else {
                (i - 1, i + 1)
            };
            match (points[a].obs(), points[b].obs()) {
                (Some(oa), Some(ob)) => {
                    let dj = points[b].params.j - points[a].params.j;
                    dj != 0.0 && (ob.rho_c - oa.rho_c) / dj > 0.0 && (ob.n0 - oa.n0) / dj < 0.0
                }
                _ => false,
            }
        })
        .collect()
}
