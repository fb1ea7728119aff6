use ddbh_equilibrium::*;
use proptest::prelude::*;

fn in_domain() -> impl Strategy<Value = HardCoreParams> {
    (0.2..2.0f64, 0.0..1.0f64, 0.02..0.98f64, 1usize..4).prop_map(|(j, ubar, f, d)| {
        let z = 2 * d;
        let mut p = HardCoreParams {
            j,
            ubar,
            omega_c: 0.0,
            z,
        };
        let (lo, hi) = p.stability_window();
        p.omega_c = lo + f * (hi - lo);
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_parameter_identity(p in in_domain()) {
        let s = hc_meanfield(&p).unwrap();
        prop_assert!((s.psi0_sq - s.n0 * (1.0 - s.n0)).abs() < 1e-15);
        prop_assert!((0.0..=1.0).contains(&s.n0));
        // closed form of |ψ₀|²
        let z = p.z as f64;
        let want = (z * p.j - p.omega_c) * (z * (p.j + p.ubar) + p.omega_c) / (z * z * (2.0 * p.j + p.ubar).powi(2));
        prop_assert!((s.psi0_sq - want).abs() < 1e-12);
    }

    #[test]
    fn n0_minimizes_energy(p in in_domain()) {
        let s = hc_meanfield(&p).unwrap();
        let z = p.z as f64;
        let e = |n: f64| -z * p.j * n * (1.0 - n) + 0.5 * z * p.ubar * n * n + p.omega_c * n;
        prop_assert!((e(s.n0) - s.energy_density).abs() < 1e-12);
        for dn in [-1e-3, 1e-3] {
            prop_assert!(e(s.n0 + dn) >= e(s.n0) - 1e-15);
        }
    }

    #[test]
    fn modes_real_and_matching(p in in_domain(), q in 0.0..std::f64::consts::PI) {
        let k = vec![q; p.d()];
        let ev = hc_bdg(&p, &k).unwrap();
        for w in &ev {
            prop_assert!(w.im.abs() < 1e-10);
        }
        let g = hc_goldstone(&p, &k).unwrap();
        prop_assert!((ev[2].re - g).abs() < 1e-8);
        prop_assert!((ev[0].re + g).abs() < 1e-8);
        prop_assert!(ev[1].re.abs() < 1e-8);
        if q > 1e-3 {
            prop_assert!(g > 0.0);
        }
    }

    #[test]
    fn healing_length_matches_kinetic_scale(p in in_domain()) {
        let s = hc_meanfield(&p).unwrap();
        prop_assume!(s.n0 > 1e-6);
        let z = p.z as f64;
        // ξ solves 2zJ sin²(π/2ξ) = 2zJ n₀, the mean-field shift at Ū = 0
        let lhs = 2.0 * z * p.j * (std::f64::consts::PI / (2.0 * s.xi)).sin().powi(2);
        prop_assert!((lhs - 2.0 * z * p.j * s.n0).abs() < 1e-12);
    }
}

#[test]
fn zero_mode_at_gamma() {
    let p = HardCoreParams {
        j: 1.1,
        ubar: 0.3,
        omega_c: 0.7,
        z: 4,
    };
    let ev = hc_bdg(&p, &[0.0, 0.0]).unwrap();
    assert!(ev.iter().all(|w| w.norm() < 1e-10));
}

#[test]
fn acoustic_slope() {
    let p = HardCoreParams {
        j: 0.8,
        ubar: 0.25,
        omega_c: -0.4,
        z: 4,
    };
    let cs = sound_velocity(&p).unwrap();
    let h = 1e-5;
    // along the diagonal |k| = √2 q
    let w = hc_bdg(&p, &[h, h]).unwrap()[2].re;
    let slope = w / (h * 2f64.sqrt());
    assert!((slope / cs - 1.0).abs() < 1e-6, "{slope} {cs}");
}

#[test]
fn sound_velocity_vanishes_at_edges() {
    let mut p = HardCoreParams::default();
    let (lo, hi) = p.stability_window();
    p.omega_c = hi - 1e-12;
    assert!(sound_velocity(&p).unwrap() < 1e-5);
    p.omega_c = lo + 1e-12;
    assert!(sound_velocity(&p).unwrap() < 1e-5);
}
