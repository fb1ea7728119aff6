use ddbh_core::{Execution, GutzwillerState, ModelParams};
use ddbh_meanfield::observables::density;
use ddbh_meanfield::{analytic_ip_ness, propagate_to_ness, NessResult, Phase, PropagateOptions};
use ddbh_response::*;
use ddbh_spectrum::*;
use num_complex::Complex64 as C64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn params(rabi: f64, zj: f64) -> ModelParams {
    ModelParams {
        rabi,
        ..ModelParams::default()
    }
    .with_zj(zj)
}

fn ip(p: &ModelParams) -> NessResult {
    NessResult {
        c0: analytic_ip_ness(p).unwrap(),
        psi0: C64::new(0.0, 0.0),
        omega0: 0.0,
        phase: Phase::Ip,
        converged: true,
        residual: 0.0,
        steps: 0,
        t: 0.0,
    }
}

fn sfp() -> (ModelParams, NessResult) {
    let p = params(0.3, 3.0);
    let r = propagate_to_ness(
        &GutzwillerState::seeded(p.basis(), 1e-3),
        &p,
        &PropagateOptions::default(),
    )
    .unwrap();
    (p, r)
}

fn sets(n: &NessResult, p: &ModelParams, ks: &[Vec<f64>]) -> Vec<ModeSet> {
    mode_sets(n, p, ks, Execution::default())
        .into_iter()
        .collect::<Result<_, _>>()
        .unwrap()
}

fn eta(p: &ModelParams) -> C64 {
    C64::new(p.gamma_l.sqrt(), 0.0)
}

#[test]
fn residue_sum_both_phases() {
    let p = params(0.5, 0.5);
    let n = ip(&p);
    let (ps, ns) = sfp();
    for (n, p, from) in [(&n, &p, 0.0), (&ns, &ps, 1e-3)] {
        let fv = FluctuationVectors::new(&n.c0, p);
        let want = 1.0 - 2.0 * density(&n.c0);
        for ms in sets(n, p, &diagonal_path(2, 25, from, PI)) {
            let r = residues(&fv, &ms, n.c0.basis);
            assert!((r.z_sum() - want).norm() < 1e-6, "{} vs {want}", r.z_sum());
            // large-ω tail
            let g = retarded_green(&r, &ms, &[1e7]).unwrap()[0] * 1e7;
            assert!((g - want).norm() < 1e-5);
        }
    }
}

#[test]
fn spectral_matches_direct_solve() {
    let p = params(0.5, 0.5);
    let n = ip(&p);
    let (ps, ns) = sfp();
    let probes = [
        ([0.3, 0.1], 10.4),
        ([1.0, 2.0], 9.0),
        ([3.1, -0.4], 10.6),
        ([0.05, 0.05], 0.02),
        ([2.0, 2.0], -1.1),
    ];
    for (n, p) in [(&n, &p), (&ns, &ps)] {
        let fv = FluctuationVectors::new(&n.c0, p);
        for (k, w) in probes {
            let ms = mode_set(n, p, &k).unwrap();
            let g = retarded_green(&residues(&fv, &ms, n.c0.basis), &ms, &[w]).unwrap()[0];
            let d = retarded_green_direct(n, p, &k, w).unwrap();
            assert!((g - d).norm() < 1e-8, "{g} vs {d}");
        }
    }
}

#[test]
fn diagonal_state_has_no_density_response() {
    let p = params(0.5, 0.5);
    let mut n = ip(&p);
    n.c0 = GutzwillerState::maximally_mixed(p.basis());
    let ms = mode_set(&n, &p, &[0.4, 0.2]).unwrap();
    let fv = FluctuationVectors::new(&n.c0, &p);
    assert!(fv.n0.iter().all(|z| z.norm() == 0.0));
    let chi = density_response(&residues(&fv, &ms, n.c0.basis), &ms, &[0.0, 3.0, 10.0]).unwrap();
    assert!(chi.iter().all(|z| z.norm() == 0.0));
}

#[test]
fn density_response_tail() {
    let (p, n) = sfp();
    let ms = mode_set(&n, &p, &[0.3, 0.3]).unwrap();
    let r = residues(&FluctuationVectors::new(&n.c0, &p), &ms, n.c0.basis);
    // the 1/ω coefficient is e_N·N₀, which vanishes: N₀ has no diagonal part
    let s: C64 = r.dens.iter().sum();
    assert!(s.norm() < 1e-10);
    let chi = density_response(&r, &ms, &[1e4, 1e5]).unwrap();
    let ratio = chi[0].norm() / chi[1].norm();
    assert!((ratio - 100.0).abs() < 1.0, "{ratio}");
}

#[test]
fn ip_has_no_anomalous_response() {
    let p = params(0.5, 1.0);
    let n = ip(&p);
    let s = sets(&n, &p, &diagonal_path(2, 8, 0.0, PI));
    let grid = default_omega_grid(10.0, 1.0, 201);
    let m = response_map(&n, &p, &s, &grid, eta(&p), eta(&p), Execution::Sequential).unwrap();
    let worst = m
        .delta_r
        .iter()
        .flatten()
        .chain(m.f.iter().flatten())
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    assert!(worst < 1e-12, "{worst}");
}

#[test]
fn deep_insulator_population_inversion() {
    let p = params(0.5, 0.5);
    let n = ip(&p);
    let s = sets(&n, &p, &diagonal_path(2, 11, 0.0, PI));
    let bands = classify_branches(&s, Phase::Ip).unwrap();
    let qp = band(&bands, BranchLabel::QP).unwrap();
    let grid = default_omega_grid(10.0, 1.0, 2001);
    let m = response_map(&n, &p, &s, &grid, eta(&p), eta(&p), Execution::default()).unwrap();
    for (i, ms) in s.iter().enumerate() {
        let a = qp.modes[i];
        assert!(m.residues[i].z[a].re < 0.0);
        let w = ms.omega[a];
        for (j, &o) in grid.iter().enumerate() {
            if (o - w.re).abs() <= w.im.abs() && m.a[i][j] < 0.0 {
                assert!(m.r[i][j].norm_sqr() > 1.0);
            }
        }
        let j = grid.iter().position(|&o| o >= w.re).unwrap();
        assert!(m.a[i][j] < 0.0);
    }
}

#[test]
fn pointwise_identities_and_dos_weight() {
    let p = params(0.5, 1.5);
    let n = ip(&p);
    let s = sets(&n, &p, &diagonal_path(2, 9, 0.0, PI));
    let grid = default_omega_grid(10.0, 1.0, 4001);
    let m = response_map(&n, &p, &s, &grid, eta(&p), eta(&p), Execution::default()).unwrap();
    for i in 0..s.len() {
        for j in 0..grid.len() {
            assert!((m.a[i][j] + m.g_r[i][j].im / PI).abs() < 1e-14);
            assert!((m.r[i][j] - 1.0 - m.t[i][j]).norm() < 1e-14);
            assert!((m.t[i][j] - C64::new(0.0, -p.gamma_l) * m.g_r[i][j]).norm() < 1e-14);
        }
    }
    let d = m.dos_summary;
    assert!(
        (d.window_integral + d.tail_estimate - d.expected).abs() < 2e-3,
        "{d:?}"
    );
}

#[test]
fn sfp_particle_hole_symmetric_residues_at_small_k() {
    let (p, n) = sfp();
    let s = sets(&n, &p, &diagonal_path(2, 40, 1e-3, 0.05));
    let bands = classify_branches(&s, Phase::Sfp).unwrap();
    let g = band(&bands, BranchLabel::G).unwrap();
    let fv = FluctuationVectors::new(&n.c0, &p);
    for i in diffusive_window(&s, g) {
        let r = residues(&fv, &s[i], n.c0.basis);
        let a = g.modes[i];
        let (z, zb) = (r.z[a].norm(), r.zbar[a].norm());
        assert!((z - zb).abs() < 0.05 * z.max(zb), "{z} {zb}");
    }
}

#[test]
fn synthetic_lorentzian_and_fano() {
    let grid: Vec<f64> = (0..200001).map(|i| -99.0 + i as f64 * 1e-3).collect();
    let pole = [C64::new(1.0, -0.1)];
    let g = pole_sweep(&[C64::new(1.0, 0.0)], &pole, &grid).unwrap();
    let a = dos(&g);
    let j = grid.iter().position(|&x| (x - 1.0).abs() < 1e-9).unwrap();
    assert!((a[j] - 1.0 / (PI * 0.1)).abs() < 1e-9);
    let jh = grid.iter().position(|&x| (x - 1.1).abs() < 1e-9).unwrap();
    assert!((a[jh] - 0.5 / (PI * 0.1)).abs() < 1e-9);
    assert!((pole_window_integral(&[C64::new(1.0, 0.0)], &pole, -1e9, 1e9) - 1.0).abs() < 1e-9);

    let f = dos(&pole_sweep(&[C64::new(0.0, -0.5)], &pole, &grid).unwrap());
    // odd around the pole
    assert!((f[j + 50] + f[j - 50]).abs() < 1e-12);
    assert!(pole_window_integral(&[C64::new(0.0, -0.5)], &pole, -1e9, 1e9).abs() < 1e-9);
    assert!(trapezoid(&grid, &f).abs() < 1e-2);
}

#[test]
fn critical_frequency_uses_first_superfluid_point() {
    use ddbh_meanfield::{phase_scan, ScanOptions};
    let grid: Vec<ModelParams> = [2.0, 3.0, 3.2].iter().map(|&zj| params(0.3, zj)).collect();
    let pts = phase_scan(&grid, &ScanOptions::default());
    let w = critical_frequency(&pts).unwrap();
    let first = pts
        .iter()
        .find(|p| p.ness().unwrap().phase == Phase::Sfp)
        .unwrap();
    assert_eq!(w, first.ness().unwrap().omega0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn reflectivity_sum_rule_is_exact(gr in -5.0..5.0f64, gi in -5.0..5.0f64, el in 0.01..1.0f64, er in 0.01..1.0f64) {
        let g = [C64::new(gr, gi)];
        let o = transmittivity_reflectivity(&g, C64::new(el, 0.0), C64::new(er, 0.0)).unwrap();
        let want = o.t[0].norm_sqr() + o.r[0].norm_sqr() - 1.0;
        prop_assert!((o.sumrule_violation[0] - want).abs() < 1e-12);
        // |R|² − 1 = −2π η_L² A + (η_L/η_R)²|T|² for real mirrors
        let a = -gi / PI;
        let lhs = o.r[0].norm_sqr() - 1.0;
        let rhs = -2.0 * PI * el * el * a + (el / er).powi(2) * o.t[0].norm_sqr();
        prop_assert!((lhs - rhs).abs() < 1e-9 * (1.0 + rhs.abs()));
    }
}
