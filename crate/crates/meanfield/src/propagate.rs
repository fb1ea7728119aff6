//! RK4 propagation to the steady state (fixed point or limit cycle).

use crate::error::MeanfieldError;
use crate::observables::{density, purity};
use crate::superop::Generator;
use ddbh_core::{validate_state, GutzwillerState, ModelParams};
use num_complex::Complex64 as C64;
use std::collections::VecDeque;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Ip,
    Sfp,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Ip => "IP",
            Phase::Sfp => "SFP",
        })
    }
}

/// Frame updates stop once the co-rotating drift frequency is below this.
const FRAME_TOL: f64 = 1e-9;

/// Integrator settings. Times are absolute; the defaults assume Γ_p = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PropagateOptions {
    pub dt: f64,
    pub t_max: f64,
    pub tol: f64,
    /// Trailing convergence window. `None` means 10/Γ_l.
    pub window: Option<f64>,
    /// |ψ| above this classifies the state as superfluid.
    pub psi_threshold: f64,
    /// ψ is sampled every this many steps for the frequency fit.
    pub sample_every: usize,
}

impl Default for PropagateOptions {
    fn default() -> Self {
        PropagateOptions {
            dt: 1e-2,
            t_max: 1e5,
            tol: 1e-10,
            window: None,
            psi_threshold: 1e-4,
            sample_every: 10,
        }
    }
}

impl PropagateOptions {
    pub fn window_for(&self, p: &ModelParams) -> f64 {
        self.window.unwrap_or_else(|| {
            if p.gamma_l > 0.0 {
                10.0 / p.gamma_l
            } else {
                10.0 / p.gamma_p
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NessResult {
    /// Final state in the frame co-rotating with the limit cycle (frame
    /// independent in the IP).
    pub c0: GutzwillerState,
    pub psi0: C64,
    /// Lab-frame limit-cycle frequency; 0 in the IP.
    pub omega0: f64,
    pub phase: Phase,
    pub converged: bool,
    pub residual: f64,
    pub steps: usize,
    pub t: f64,
}

/// Multiplies every element by exp(+i ω0 t Q).
pub fn rotating_frame_transform(s: &GutzwillerState, omega0: f64, t: f64) -> GutzwillerState {
    let mut out = s.clone();
    for (i, x) in out.c.iter_mut().enumerate() {
        let q = s.basis.charge(i) as f64;
        if q != 0.0 {
            *x *= C64::from_polar(1.0, omega0 * t * q);
        }
    }
    out
}

struct Rk4 {
    k: [Vec<C64>; 4],
    tmp: Vec<C64>,
}

impl Rk4 {
    fn new(d: usize) -> Self {
        let z = vec![C64::new(0.0, 0.0); d];
        Rk4 {
            k: [z.clone(), z.clone(), z.clone(), z.clone()],
            tmp: z,
        }
    }

    /// One step of ∂t c = −i L[c] c.
    fn step(&mut self, g: &Generator, c: &mut [C64], dt: f64) {
        let mi = C64::new(0.0, -1.0);
        let d = c.len();
        g.apply(c, &mut self.k[0]);
        for i in 0..d {
            self.tmp[i] = c[i] + mi * self.k[0][i] * (0.5 * dt);
        }
        let (k01, k23) = self.k.split_at_mut(2);
        g.apply(&self.tmp, &mut k01[1]);
        for i in 0..d {
            self.tmp[i] = c[i] + mi * k01[1][i] * (0.5 * dt);
        }
        g.apply(&self.tmp, &mut k23[0]);
        for i in 0..d {
            self.tmp[i] = c[i] + mi * k23[0][i] * dt;
        }
        g.apply(&self.tmp, &mut k23[1]);
        for i in 0..d {
            let s = self.k[0][i] + 2.0 * self.k[1][i] + 2.0 * self.k[2][i] + self.k[3][i];
            c[i] += mi * s * (dt / 6.0);
        }
    }
}

/// Lab-frame state after time `t`, integrated with `t/dt` RK4 steps
/// (internally in the frame rotating at ω_c).
pub fn evolve(init: &GutzwillerState, p: &ModelParams, t: f64, dt: f64) -> GutzwillerState {
    let g = Generator::new(p, p.omega_c);
    let steps = (t / dt).round() as usize;
    let h = t / steps.max(1) as f64;
    let mut c = init.c.clone();
    let mut rk = Rk4::new(c.len());
    for _ in 0..steps {
        rk.step(&g, &mut c, h);
    }
    let s = GutzwillerState {
        c,
        basis: init.basis,
    };
    rotating_frame_transform(&s, p.omega_c, -t)
}

/// Best real ω with L c ≈ ω Q c, and the remaining residual norm.
fn frame_residual(g: &Generator, c: &[C64], buf: &mut [C64]) -> (f64, f64) {
    g.apply(c, buf);
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, (x, f)) in c.iter().zip(buf.iter()).enumerate() {
        let q = g.basis.charge(i) as f64;
        let qx = *x * q;
        num += (qx.conj() * f).re;
        den += qx.norm_sqr();
    }
    let w = if den > 1e-300 { num / den } else { 0.0 };
    let mut r2 = 0.0;
    for (i, (x, f)) in c.iter().zip(buf.iter()).enumerate() {
        let q = g.basis.charge(i) as f64;
        r2 += (*f - *x * (w * q)).norm_sqr();
    }
    (w, r2.sqrt())
}

struct Snapshot {
    t: f64,
    c: Vec<C64>,
    abs_psi: f64,
    n0: f64,
    purity: f64,
}

/// Runs RK4 until the state is stationary in its co-rotating frame.
///
/// Convergence needs both a small instantaneous residual ‖(L − ωQ)c‖ and a
/// small drift over the trailing window: the full state in the IP, |ψ|, n₀
/// and purity in the superfluid.
pub fn propagate_to_ness(
    init: &GutzwillerState,
    p: &ModelParams,
    opts: &PropagateOptions,
) -> Result<NessResult, MeanfieldError> {
    p.validate()?;
    if opts.dt <= 0.0 || !opts.dt.is_finite() {
        return Err(MeanfieldError::InvalidState(format!(
            "dt must be positive, got {}",
            opts.dt
        )));
    }
    if init.basis != p.basis() {
        return Err(MeanfieldError::InvalidState(
            "basis does not match parameters".into(),
        ));
    }
    let v = validate_state(init, 1e-8);
    if !v.is_empty() {
        return Err(MeanfieldError::InvalidState(format!("{v:?}")));
    }

    let mut g = Generator::new(p, p.omega_c);
    let dt = opts.dt;
    let window = opts.window_for(p);
    let check_every = ((window / 50.0 / dt).round() as usize).max(1);
    let keep = ((window / dt).round() as usize / check_every).max(1);
    let max_steps = (opts.t_max / dt).ceil() as usize;
    let sample_every = opts.sample_every.max(1);
    let n_samples = ((window / dt).round() as usize / sample_every).max(3);

    let mut c = init.c.clone();
    let mut rk = Rk4::new(c.len());
    let mut buf = vec![C64::new(0.0, 0.0); c.len()];
    let mut snaps: VecDeque<Snapshot> = VecDeque::new();
    let mut samples: VecDeque<(f64, C64)> = VecDeque::new();
    let mut converged = false;
    let mut residual = f64::INFINITY;
    let mut steps = 0;

    while steps < max_steps {
        rk.step(&g, &mut c, dt);
        steps += 1;
        let t = steps as f64 * dt;
        if steps % sample_every == 0 {
            samples.push_back((t, g.psi(&c)));
            if samples.len() > n_samples {
                samples.pop_front();
            }
        }
        if steps % check_every != 0 {
            continue;
        }
        let mut s = GutzwillerState { c, basis: g.basis };
        let tr = s.trace();
        if !tr.re.is_finite() || !tr.im.is_finite() {
            return Err(MeanfieldError::Diverged(t));
        }
        if (tr - 1.0).norm() > 100.0 * opts.tol {
            return Err(MeanfieldError::TraceDrift { trace: tr.re, t });
        }
        s.hermitize();
        c = s.c;

        let (w, r) = frame_residual(&g, &c, &mut buf);
        // Follow a limit cycle with the frame so that it becomes a fixed
        // point of the discrete map; otherwise the RK4 phase error leaves a
        // residual of order ω⁵dt⁴.
        if g.psi(&c).norm() > opts.psi_threshold && w.abs() > FRAME_TOL {
            g.set_frame(g.frame + w);
            samples.clear();
            snaps.clear();
        }
        let st = GutzwillerState {
            c: c.clone(),
            basis: g.basis,
        };
        let snap = Snapshot {
            t,
            abs_psi: g.psi(&c).norm(),
            n0: density(&st),
            purity: purity(&st),
            c: st.c,
        };
        if let Some(old) = snaps.front().filter(|o| t - o.t >= window - 0.5 * dt) {
            let drift = if snap.abs_psi < opts.psi_threshold {
                snap.c
                    .iter()
                    .zip(&old.c)
                    .map(|(a, b)| (a - b).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            } else {
                (snap.abs_psi - old.abs_psi)
                    .abs()
                    .max((snap.n0 - old.n0).abs())
                    .max((snap.purity - old.purity).abs())
            };
            residual = r.max(drift);
            if residual < opts.tol {
                converged = true;
            }
        }
        snaps.push_back(snap);
        if snaps.len() > keep {
            snaps.pop_front();
        }
        if converged {
            break;
        }
    }

    let c0 = GutzwillerState { c, basis: g.basis };
    let psi0 = g.psi(&c0.c);
    let phase = if psi0.norm() > opts.psi_threshold {
        Phase::Sfp
    } else {
        Phase::Ip
    };
    let omega0 = match phase {
        Phase::Ip => 0.0,
        Phase::Sfp => {
            let s: Vec<(f64, C64)> = samples.into_iter().collect();
            g.frame + extract_limit_cycle_frequency_with(&s, opts.psi_threshold)?
        }
    };
    Ok(NessResult {
        c0,
        psi0,
        omega0,
        phase,
        converged,
        residual,
        steps,
        t: steps as f64 * dt,
    })
}

/// ω₀ = −d arg ψ / dt by least squares, with the default |ψ| threshold 1e−4.
pub fn extract_limit_cycle_frequency(samples: &[(f64, C64)]) -> Result<f64, MeanfieldError> {
    extract_limit_cycle_frequency_with(samples, 1e-4)
}

pub fn extract_limit_cycle_frequency_with(
    samples: &[(f64, C64)],
    threshold: f64,
) -> Result<f64, MeanfieldError> {
    let live: Vec<&(f64, C64)> = samples
        .iter()
        .filter(|(_, z)| z.norm() > threshold)
        .collect();
    if live.is_empty() {
        return Ok(0.0);
    }
    if live.len() < 3 {
        return Err(MeanfieldError::TooFewSamples(live.len()));
    }
    let h = live[1].0 - live[0].0;
    for i in 1..live.len() {
        let hi = live[i].0 - live[i - 1].0;
        if (hi - h).abs() > 1e-9 * h.abs().max(1e-300) {
            return Err(MeanfieldError::NonUniformSampling(i));
        }
    }
    let mut phase = Vec::with_capacity(live.len());
    let mut acc = live[0].1.arg();
    phase.push(acc);
    for i in 1..live.len() {
        let mut jump = live[i].1.arg() - live[i - 1].1.arg();
        jump -= 2.0 * PI * (jump / (2.0 * PI)).round();
        if jump.abs() > FRAC_PI_2 {
            return Err(MeanfieldError::SamplingTooCoarse { index: i - 1, jump });
        }
        acc += jump;
        phase.push(acc);
    }
    let t: Vec<f64> = live.iter().map(|(t, _)| *t).collect();
    let fit =
        ddbh_core::fit::linear_fit(&t, &phase).ok_or(MeanfieldError::TooFewSamples(live.len()))?;
    Ok(-fit.slope)
}
