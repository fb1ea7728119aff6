//! Response functions on a (k, ω) grid.

use crate::dos::{dos, local_dos, pole_window_integral, trapezoid, DosSummary};
use crate::error::ResponseError;
use crate::green::{anomalous_green, density_response, residues, retarded_green, Residues};
use crate::optics::{four_wave_mixing, transmittivity_reflectivity};
use ddbh_core::{Execution, ModelParams};
use ddbh_meanfield::observables::density;
use ddbh_meanfield::{NessResult, Phase, ScanPoint};
use ddbh_spectrum::{FluctuationVectors, ModeSet};
use num_complex::Complex64 as C64;

/// Samples indexed `[k][ω]`.
#[derive(Debug, Clone)]
pub struct ResponseMap {
    pub k_grid: Vec<Vec<f64>>,
    pub omega_grid: Vec<f64>,
    pub chi_n: Vec<Vec<C64>>,
    pub g_r: Vec<Vec<C64>>,
    pub delta_r: Vec<Vec<C64>>,
    pub a: Vec<Vec<f64>>,
    pub t: Vec<Vec<C64>>,
    pub r: Vec<Vec<C64>>,
    pub f: Vec<Vec<C64>>,
    pub sumrule_violation: Vec<Vec<f64>>,
    pub residues: Vec<Residues>,
    pub eta_l: C64,
    pub eta_r: C64,
    pub local_dos: Vec<f64>,
    pub dos_summary: DosSummary,
    pub n0: f64,
}

/// `n` evenly spaced frequencies in [center − 10Γ_p, center + 10Γ_p].
pub fn default_omega_grid(center: f64, gamma_p: f64, n: usize) -> Vec<f64> {
    let (lo, hi) = (center - 10.0 * gamma_p, center + 10.0 * gamma_p);
    match n {
        0 => Vec::new(),
        1 => vec![center],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// ω₀ at the smallest-J superfluid point of a J sweep.
pub fn critical_frequency(points: &[ScanPoint]) -> Option<f64> {
    points
        .iter()
        .filter_map(|pt| {
            pt.ness()
                .filter(|n| n.phase == Phase::Sfp && n.converged)
                .map(|n| (pt.params.j, n.omega0))
        })
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, w)| w)
}

struct Row {
    chi: Vec<C64>,
    g: Vec<C64>,
    d: Vec<C64>,
    res: Residues,
}

pub fn response_map(
    ness: &NessResult,
    p: &ModelParams,
    sets: &[ModeSet],
    omega_grid: &[f64],
    eta_l: C64,
    eta_r: C64,
    exec: Execution,
) -> Result<ResponseMap, ResponseError> {
    if eta_r == C64::new(0.0, 0.0) {
        return Err(ResponseError::ZeroMirror);
    }
    let fv = FluctuationVectors::new(&ness.c0, p);
    let basis = ness.c0.basis;
    let rows = exec.map(sets, |_, ms| -> Result<Row, ResponseError> {
        let res = residues(&fv, ms, basis);
        Ok(Row {
            chi: density_response(&res, ms, omega_grid)?,
            g: retarded_green(&res, ms, omega_grid)?,
            d: anomalous_green(&res, ms, omega_grid)?,
            res,
        })
    });
    let rows: Vec<Row> = rows.into_iter().collect::<Result<_, _>>()?;

    let mut out = ResponseMap {
        k_grid: sets.iter().map(|s| s.k.clone()).collect(),
        omega_grid: omega_grid.to_vec(),
        chi_n: Vec::new(),
        g_r: Vec::new(),
        delta_r: Vec::new(),
        a: Vec::new(),
        t: Vec::new(),
        r: Vec::new(),
        f: Vec::new(),
        sumrule_violation: Vec::new(),
        residues: Vec::new(),
        eta_l,
        eta_r,
        local_dos: Vec::new(),
        dos_summary: DosSummary {
            window_integral: 0.0,
            expected: 0.0,
            tail_estimate: 0.0,
        },
        n0: density(&ness.c0),
    };
    let (lo, hi) = (
        omega_grid.first().copied().unwrap_or(0.0),
        omega_grid.last().copied().unwrap_or(0.0),
    );
    let mut tail = 0.0;
    for (row, ms) in rows.into_iter().zip(sets) {
        let o = transmittivity_reflectivity(&row.g, eta_l, eta_r)?;
        out.a.push(dos(&row.g));
        out.f.push(four_wave_mixing(&row.d, eta_l, eta_r));
        out.t.push(o.t);
        out.r.push(o.r);
        out.sumrule_violation.push(o.sumrule_violation);
        tail += row.res.z_sum().re - pole_window_integral(&row.res.z, &ms.omega, lo, hi);
        out.chi_n.push(row.chi);
        out.g_r.push(row.g);
        out.delta_r.push(row.d);
        out.residues.push(row.res);
    }
    out.local_dos = local_dos(&out.a);
    out.dos_summary = DosSummary {
        window_integral: trapezoid(omega_grid, &out.local_dos),
        expected: 1.0 - 2.0 * out.n0,
        tail_estimate: tail / sets.len().max(1) as f64,
    };
    Ok(out)
}
