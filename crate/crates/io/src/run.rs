//! Task drivers: compute, then write CSV files and the manifest in grid order.

use crate::config::{RunConfig, Task};
use crate::table::{self, fmt_f64, k_columns, owned, Table};
use ddbh_core::{Execution, GutzwillerState, ModelParams};
use ddbh_equilibrium::{hc_bdg, hc_goldstone, sound_velocity};
use ddbh_meanfield::observables::density;
use ddbh_meanfield::{phase_scan, propagate_to_ness, NessResult, Phase, ScanPoint};
use ddbh_response::response_map;
use ddbh_spectrum::{
    classify_branches, diagonal_path, labels_at, mode_sets, pairing_error, stability_over,
    BranchLabel, ModeSet,
};
use num_complex::Complex64 as C64;
use serde::Serialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    /// Grid index, or k index for per-k failures.
    pub index: usize,
    pub what: String,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub files: Vec<PathBuf>,
    pub failures: Vec<Failure>,
    pub manifest: Value,
}

impl RunReport {
    /// 0 on full success, 1 if any point failed.
    pub fn exit_code(&self) -> i32 {
        if self.failures.is_empty() {
            0
        } else {
            1
        }
    }
}

struct Out<'a> {
    dir: &'a Path,
    files: Vec<PathBuf>,
}

impl Out<'_> {
    fn table(
        &mut self,
        name: &str,
        cols: &[(String, String)],
    ) -> Result<(Table, PathBuf), RunError> {
        let path = self.dir.join(name);
        let t = Table::create(&path, cols).map_err(|source| RunError::Write {
            path: path.clone(),
            source,
        })?;
        self.files.push(path.clone());
        Ok((t, path))
    }
}

fn werr(path: &Path) -> impl Fn(std::io::Error) -> RunError + '_ {
    move |source| RunError::Write {
        path: path.to_path_buf(),
        source,
    }
}

/// Runs the configured task and writes its files into `dir`.
pub fn run(cfg: &RunConfig, dir: &Path, exec: Execution) -> Result<RunReport, RunError> {
    std::fs::create_dir_all(dir).map_err(werr(dir))?;
    let mut out = Out {
        dir,
        files: Vec::new(),
    };
    let mut failures = Vec::new();
    let extra = match cfg.task {
        Task::PhaseDiagram => phase_diagram(cfg, exec, &mut out, &mut failures)?,
        Task::Ness => ness(cfg, exec, &mut out, &mut failures)?,
        Task::Spectrum => spectrum(cfg, exec, &mut out, &mut failures, false)?,
        Task::Response => spectrum(cfg, exec, &mut out, &mut failures, true)?,
        Task::Equilibrium => equilibrium(cfg, &mut out, &mut failures)?,
    };
    let files: Vec<String> = out
        .files
        .iter()
        .filter_map(|p| p.file_name().map(|s| s.to_string_lossy().into_owned()))
        .collect();
    let mut manifest = json!({
        "tool": "ddbh",
        "version": env!("CARGO_PKG_VERSION"),
        "task": cfg.task.as_str(),
        "config_hash": cfg.hash(),
        "config": cfg.semantic(),
        "files": files,
        "failures": failures,
    });
    if let (Some(m), Value::Object(e)) = (manifest.as_object_mut(), extra) {
        m.extend(e);
    }
    let path = dir.join("manifest.json");
    let text = serde_json::to_string_pretty(&manifest).expect("json");
    std::fs::write(&path, text + "\n").map_err(werr(&path))?;
    out.files.push(path);
    Ok(RunReport {
        files: out.files,
        failures,
        manifest,
    })
}

fn record_scan_failures(pts: &[ScanPoint], failures: &mut Vec<Failure>) {
    for pt in pts {
        match &pt.outcome {
            Err(e) => failures.push(Failure {
                index: pt.index,
                what: e.to_string(),
            }),
            Ok((n, _)) if !n.converged => failures.push(Failure {
                index: pt.index,
                what: format!("not converged by t = {} (residual {:e})", n.t, n.residual),
            }),
            _ => {}
        }
    }
}

fn convergence(pts: &[ScanPoint]) -> Value {
    let done: Vec<&NessResult> = pts.iter().filter_map(|p| p.ness()).collect();
    let steps: Vec<usize> = done.iter().map(|n| n.steps).collect();
    json!({
        "points": pts.len(),
        "converged": done.iter().filter(|n| n.converged).count(),
        "errors": pts.len() - done.len(),
        "max_residual": done.iter().map(|n| n.residual).fold(0.0, f64::max),
        "mean_steps": steps.iter().sum::<usize>() as f64 / steps.len().max(1) as f64,
        "max_steps": steps.iter().copied().max().unwrap_or(0),
        "warm_started": pts.iter().filter(|p| p.warm).count(),
    })
}

/// Reruns an evenly spaced subset of warm-started points from a cold start.
pub fn cold_start_check(
    cfg: &RunConfig,
    grid: &[ModelParams],
    pts: &[ScanPoint],
    exec: Execution,
) -> Value {
    let warm: Vec<usize> = pts
        .iter()
        .filter(|p| p.warm && p.ok())
        .map(|p| p.index)
        .collect();
    let frac = cfg.integrator.cold_check_fraction;
    if warm.is_empty() || frac == 0.0 {
        return json!({"checked": [], "agree": true});
    }
    let n = ((frac * grid.len() as f64).ceil() as usize).clamp(1, warm.len());
    let pick: Vec<usize> = (0..n)
        .map(|j| warm[(2 * j + 1) * warm.len() / (2 * n)])
        .collect();
    let sub: Vec<ModelParams> = pick.iter().map(|&i| grid[i].clone()).collect();
    let mut opts = cfg.scan_options(exec);
    opts.warm_start = false;
    let cold = phase_scan(&sub, &opts);
    let (mut dn, mut dpsi) = (0.0f64, 0.0f64);
    let mut phase_ok = true;
    for (c, &i) in cold.iter().zip(&pick) {
        match (c.ness(), c.obs(), pts[i].ness(), pts[i].obs()) {
            (Some(a), Some(oa), Some(b), Some(ob)) => {
                dn = dn.max((oa.n0 - ob.n0).abs());
                dpsi = dpsi.max((a.psi0.norm() - b.psi0.norm()).abs());
                phase_ok &= a.phase == b.phase;
            }
            _ => phase_ok = false,
        }
    }
    let tol = 1e-6;
    json!({
        "checked": pick,
        "max_abs_dn0": dn,
        "max_abs_dpsi0": dpsi,
        "tolerance": tol,
        "agree": phase_ok && dn < tol && dpsi < tol,
    })
}

fn summary_fields(pt: &ScanPoint) -> Vec<String> {
    let p = &pt.params;
    let (vals, phase) = match &pt.outcome {
        Ok((n, o)) => (
            [o.n0, n.psi0.norm(), n.omega0, o.purity, o.entropy],
            n.phase.to_string(),
        ),
        Err(_) => ([f64::NAN; 5], "failed".to_string()),
    };
    let mut row: Vec<String> = [p.rabi, p.j].into_iter().chain(vals).map(fmt_f64).collect();
    row.push(phase);
    row
}

fn scan(
    cfg: &RunConfig,
    exec: Execution,
    failures: &mut Vec<Failure>,
) -> (Vec<ModelParams>, Vec<ScanPoint>) {
    let grid = cfg.grid();
    log::info!(
        "{} grid points, warm start {}",
        grid.len(),
        cfg.integrator.warm_start
    );
    let pts = phase_scan(&grid, &cfg.scan_options(exec));
    record_scan_failures(&pts, failures);
    (grid, pts)
}

fn phase_diagram(
    cfg: &RunConfig,
    exec: Execution,
    out: &mut Out,
    failures: &mut Vec<Failure>,
) -> Result<Value, RunError> {
    let (grid, pts) = scan(cfg, exec, failures);
    let (mut t, path) = out.table("phase_diagram.csv", &owned(&table::PHASE_DIAGRAM))?;
    for pt in &pts {
        t.row(summary_fields(pt)).map_err(werr(&path))?;
    }
    t.finish().map_err(werr(&path))?;
    Ok(json!({
        "warm_start": cfg.integrator.warm_start,
        "convergence": convergence(&pts),
        "cold_start_check": cold_start_check(cfg, &grid, &pts, exec),
    }))
}

fn ness(
    cfg: &RunConfig,
    exec: Execution,
    out: &mut Out,
    failures: &mut Vec<Failure>,
) -> Result<Value, RunError> {
    let (grid, pts) = scan(cfg, exec, failures);
    let mut cols = owned(&table::PHASE_DIAGRAM);
    cols.extend(owned(&table::NESS_EXTRA));
    let (mut t, path) = out.table("ness.csv", &cols)?;
    for pt in &pts {
        let mut row = summary_fields(pt);
        match pt.ness() {
            Some(n) => row.extend([
                n.converged.to_string(),
                fmt_f64(n.residual),
                n.steps.to_string(),
            ]),
            None => row.extend(["false".into(), "NaN".into(), "0".into()]),
        }
        t.row(row).map_err(werr(&path))?;
    }
    t.finish().map_err(werr(&path))?;

    let (mut s, path) = out.table("state.csv", &owned(&table::STATE))?;
    for pt in &pts {
        if let Some(n) = pt.ness() {
            let b = n.c0.basis;
            for (r, nn, m, sg, sp) in b.elements() {
                let c = n.c0.c[r];
                let row = [
                    pt.index.to_string(),
                    nn.to_string(),
                    m.to_string(),
                    sg.to_string(),
                    sp.to_string(),
                    fmt_f64(c.re),
                    fmt_f64(c.im),
                ];
                s.row(row).map_err(werr(&path))?;
            }
        }
    }
    s.finish().map_err(werr(&path))?;
    let mut extra = json!({
        "warm_start": cfg.integrator.warm_start,
        "convergence": convergence(&pts),
    });
    if pts.len() > 1 {
        extra["cold_start_check"] = cold_start_check(cfg, &grid, &pts, exec);
    }
    Ok(extra)
}

/// Steady state of the base model from a seeded maximally mixed state.
pub fn base_ness(cfg: &RunConfig) -> Result<NessResult, String> {
    let p = cfg.model.params();
    let mut init = GutzwillerState::maximally_mixed(p.basis());
    init.seed_coherence(cfg.integrator.seed_eps);
    init.normalize();
    let n = propagate_to_ness(&init, &p, &cfg.integrator.propagate()).map_err(|e| e.to_string())?;
    if !n.converged {
        return Err(format!(
            "not converged by t = {} (residual {:e})",
            n.t, n.residual
        ));
    }
    Ok(n)
}

/// Diagonal path with the phase-dependent default start.
pub fn k_path(cfg: &RunConfig, phase: Phase) -> Vec<Vec<f64>> {
    let from = cfg.k_path.from.unwrap_or(match phase {
        Phase::Ip => 0.0,
        Phase::Sfp => 1e-3,
    });
    diagonal_path(cfg.model.d, cfg.k_path.points, from, cfg.k_path.to)
}

/// Default ω-window center: the k = 0 quasiparticle line zJ(2n₀−1)+ω_c in
/// the insulator, 0 in the co-rotating superfluid frame.
pub fn omega_center(cfg: &RunConfig, n: &NessResult) -> f64 {
    cfg.omega_grid.center.unwrap_or_else(|| match n.phase {
        Phase::Ip => {
            let p = cfg.model.params();
            p.zj() * (2.0 * density(&n.c0) - 1.0) + p.omega_c
        }
        Phase::Sfp => 0.0,
    })
}

fn spectrum(
    cfg: &RunConfig,
    exec: Execution,
    out: &mut Out,
    failures: &mut Vec<Failure>,
    with_response: bool,
) -> Result<Value, RunError> {
    let d = cfg.model.d;
    let mut cols = vec![("k_index".to_string(), "1".to_string())];
    cols.extend(k_columns(d));
    cols.extend(owned(&table::SPECTRUM_TAIL));
    let (mut t, spath) = out.table("spectrum.csv", &cols)?;
    let rt = if with_response {
        Some(out.table("response.csv", &owned(&table::RESPONSE))?)
    } else {
        None
    };

    let ness = match base_ness(cfg) {
        Ok(n) => n,
        Err(what) => {
            failures.push(Failure { index: 0, what });
            t.finish().map_err(werr(&spath))?;
            if let Some((r, p)) = rt {
                r.finish().map_err(werr(&p))?;
            }
            return Ok(json!({"ness": Value::Null}));
        }
    };
    let p = cfg.model.params();
    let ks = k_path(cfg, ness.phase);
    let mut sets: Vec<ModeSet> = Vec::with_capacity(ks.len());
    for (i, r) in mode_sets(&ness, &p, &ks, exec).into_iter().enumerate() {
        match r {
            Ok(s) => sets.push(s),
            Err(e) => failures.push(Failure {
                index: i,
                what: e.to_string(),
            }),
        }
    }
    let complete = sets.len() == ks.len();
    // labels are a by-product of a response run, so a tracking failure there
    // is only a warning
    let mut warnings: Vec<String> = Vec::new();
    let bands = if complete {
        match classify_branches(&sets, ness.phase) {
            Ok(b) => Some(b),
            Err(e) if with_response => {
                warnings.push(format!("branch labels unavailable: {e}"));
                None
            }
            Err(e) => {
                failures.push(Failure {
                    index: 0,
                    what: format!("branch tracking: {e}"),
                });
                None
            }
        }
    } else {
        None
    };
    for (i, s) in sets.iter().enumerate() {
        let labels = match &bands {
            Some(b) => labels_at(b, i, s.len()),
            None => vec![BranchLabel::Other; s.len()],
        };
        for a in 0..s.len() {
            let w = &s.weights[a];
            let mut row = vec![i.to_string()];
            row.extend(s.k.iter().map(|&x| fmt_f64(x)));
            row.push(labels[a].as_str().to_string());
            row.extend(
                [
                    s.omega[a].re,
                    s.omega[a].im,
                    w.n.re,
                    w.n.im,
                    w.u.re,
                    w.u.im,
                    w.v.re,
                    w.v.im,
                    w.c,
                ]
                .iter()
                .map(|&x| fmt_f64(x)),
            );
            t.row(row).map_err(werr(&spath))?;
        }
    }
    t.finish().map_err(werr(&spath))?;

    let stab = stability_over(&sets, 1e-8);
    let mut extra = json!({
        "ness": {
            "phase": ness.phase.to_string(),
            "n0": density(&ness.c0),
            "abs_psi0": ness.psi0.norm(),
            "omega0": ness.omega0,
            "residual": ness.residual,
        },
        "frame": match ness.phase {
            Phase::Ip => "lab",
            Phase::Sfp => "co-rotating at omega0",
        },
        "k_points": ks.len(),
        "max_pairing_error": sets.iter().map(pairing_error).fold(0.0, f64::max),
        "stable": stab.stable,
        "least_damped_im_omega": stab.worst.map(|w| w.2),
        "warnings": warnings,
    });

    if let Some((mut r, rpath)) = rt {
        if !complete {
            r.finish().map_err(werr(&rpath))?;
            return Ok(extra);
        }
        let center = omega_center(cfg, &ness);
        let grid = cfg.omega_grid.grid(center, p.gamma_p);
        let (el, er) = cfg.eta();
        match response_map(
            &ness,
            &p,
            &sets,
            &grid,
            C64::new(el, 0.0),
            C64::new(er, 0.0),
            exec,
        ) {
            Ok(m) => {
                for (i, _) in m.k_grid.iter().enumerate() {
                    for (j, &w) in grid.iter().enumerate() {
                        let g = m.g_r[i][j];
                        let row = [
                            i.to_string(),
                            fmt_f64(w),
                            fmt_f64(g.re),
                            fmt_f64(g.im),
                            fmt_f64(m.a[i][j]),
                            fmt_f64(m.t[i][j].norm_sqr()),
                            fmt_f64(m.r[i][j].norm_sqr()),
                            fmt_f64(m.f[i][j].norm_sqr()),
                            fmt_f64(m.sumrule_violation[i][j]),
                        ];
                        r.row(row).map_err(werr(&rpath))?;
                    }
                }
                let want = 1.0 - 2.0 * m.n0;
                extra["response"] = json!({
                    "omega_center": center,
                    "omega_points": grid.len(),
                    "eta_l": el,
                    "eta_r": er,
                    "max_residue_sum_error": m.residues.iter().map(|z| (z.z_sum() - want).norm()).fold(0.0, f64::max),
                    "dos_window_integral": m.dos_summary.window_integral,
                    "dos_expected": m.dos_summary.expected,
                    "dos_tail_estimate": m.dos_summary.tail_estimate,
                });
            }
            Err(e) => failures.push(Failure {
                index: 0,
                what: format!("response: {e}"),
            }),
        }
        r.finish().map_err(werr(&rpath))?;
    }
    Ok(extra)
}

fn equilibrium(
    cfg: &RunConfig,
    out: &mut Out,
    failures: &mut Vec<Failure>,
) -> Result<Value, RunError> {
    let e = &cfg.equilibrium;
    let p = e.params();
    let (mut t, path) = out.table("equilibrium.csv", &owned(&table::EQUILIBRIUM))?;
    let cs = sound_velocity(&p);
    let mut max_dev = 0.0f64;
    for q in diagonal_path(p.d(), e.points, 0.0, e.k_max)
        .into_iter()
        .map(|k| k[0])
    {
        let k = vec![q; p.d()];
        match (hc_goldstone(&p, &k), hc_bdg(&p, &k), &cs) {
            (Ok(g), Ok(ev), Ok(c)) => {
                max_dev = max_dev.max((g - ev[2].re).abs());
                t.row([fmt_f64(q), fmt_f64(g), fmt_f64(ev[2].re), fmt_f64(*c)])
                    .map_err(werr(&path))?;
            }
            (a, b, c) => {
                let what = [
                    a.err().map(|x| x.to_string()),
                    b.err().map(|x| x.to_string()),
                    c.as_ref().err().map(|x| x.to_string()),
                ]
                .into_iter()
                .flatten()
                .collect::<Vec<_>>()
                .join("; ");
                failures.push(Failure { index: 0, what });
                break;
            }
        }
    }
    t.finish().map_err(werr(&path))?;
    Ok(json!({
        "k_path": "diagonal, k column is the per-component value",
        "max_abs_closed_vs_numeric": max_dev,
    }))
}
