//! Branch labels, band tracking along a k-path, stability.

use crate::error::SpectrumError;
use crate::modes::ModeSet;
use ddbh_meanfield::Phase;
use num_complex::Complex64 as C64;
use std::fmt;

/// Minimum |x†(k_i) u(k_{i+1})| for two modes to be called the same band.
pub const TRACK_THRESHOLD: f64 = 0.5;
/// |Re ω| below this counts as purely dissipative.
const IMAG_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchLabel {
    QP,
    QH,
    D,
    G,
    A,
    Trace,
    Other,
}

impl BranchLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            BranchLabel::QP => "QP",
            BranchLabel::QH => "QH",
            BranchLabel::D => "D",
            BranchLabel::G => "G",
            BranchLabel::A => "A",
            BranchLabel::Trace => "trace",
            BranchLabel::Other => "other",
        }
    }
}

impl fmt::Display for BranchLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One tracked band: the mode index it occupies at every k of the path.
#[derive(Debug, Clone, PartialEq)]
pub struct Band {
    pub label: BranchLabel,
    pub modes: Vec<usize>,
}

impl Band {
    pub fn omega(&self, sets: &[ModeSet]) -> Vec<C64> {
        self.modes
            .iter()
            .zip(sets)
            .map(|(&a, s)| s.omega[a])
            .collect()
    }
}

/// Greedy maximum-overlap matching of modes between neighbouring k-points.
/// `perm[a]` is the mode at `next` continuing mode `a` at `cur`.
fn match_modes(cur: &ModeSet, next: &ModeSet, step: usize) -> Result<Vec<usize>, SpectrumError> {
    let n = cur.len();
    if next.len() != n {
        return Err(SpectrumError::Dimension {
            got: next.len(),
            want: n,
        });
    }
    let mut pairs = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            pairs.push((cur.overlap(a, next, b).norm(), a, b));
        }
    }
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut perm = vec![usize::MAX; n];
    let mut taken = vec![false; n];
    let mut worst = f64::INFINITY;
    for (o, a, b) in pairs {
        if perm[a] == usize::MAX && !taken[b] {
            perm[a] = b;
            taken[b] = true;
            worst = worst.min(o);
        }
    }
    if worst < TRACK_THRESHOLD {
        return Err(SpectrumError::TrackingAmbiguity {
            from: step,
            to: step + 1,
            overlap: worst,
        });
    }
    Ok(perm)
}

fn argbest(cands: impl Iterator<Item = usize>, key: impl Fn(usize) -> f64) -> Option<usize> {
    cands.min_by(|&a, &b| key(a).total_cmp(&key(b)))
}

/// Labels at the first k-point.
fn initial_labels(s: &ModeSet, phase: Phase) -> Vec<BranchLabel> {
    let mut lab = vec![BranchLabel::Other; s.len()];
    lab[s.trace_mode] = BranchLabel::Trace;
    let free = |lab: &[BranchLabel], a: usize| lab[a] == BranchLabel::Other;
    match phase {
        Phase::Ip => {
            let w = &s.weights;
            if let Some(a) = argbest(
                (0..s.len()).filter(|&a| free(&lab, a) && w[a].c > 0.5 && s.omega[a].re > 0.0),
                |a| -w[a].u.norm(),
            ) {
                lab[a] = BranchLabel::QP;
            }
            if let Some(a) = argbest(
                (0..s.len()).filter(|&a| free(&lab, a) && w[a].c < -0.5 && s.omega[a].re < 0.0),
                |a| -w[a].v.norm(),
            ) {
                lab[a] = BranchLabel::QH;
            }
            if let Some(a) = argbest(
                (0..s.len()).filter(|&a| {
                    free(&lab, a)
                        && s.omega[a].re.abs() < IMAG_TOL
                        && w[a].n.norm() > w[a].u.norm().max(w[a].v.norm())
                }),
                |a| -s.omega[a].im,
            ) {
                lab[a] = BranchLabel::D;
            }
        }
        Phase::Sfp => {
            let g = argbest((0..s.len()).filter(|&a| free(&lab, a)), |a| {
                s.omega[a].norm()
            });
            if let Some(g) = g {
                lab[g] = BranchLabel::G;
                let target = -s.omega[g].conj();
                if let Some(a) = argbest((0..s.len()).filter(|&a| free(&lab, a)), |a| {
                    (s.omega[a] - target).norm()
                }) {
                    lab[a] = BranchLabel::A;
                }
            }
            if let Some(a) = argbest(
                (0..s.len()).filter(|&a| free(&lab, a) && s.omega[a].re.abs() < IMAG_TOL),
                |a| -s.omega[a].im,
            ) {
                lab[a] = BranchLabel::D;
            }
        }
    }
    lab
}

/// Tracks every mode along an ordered k-path and labels the bands from their
/// character at the first point (which should be the smallest |k|).
///
/// In the superfluid the Goldstone and amplitude bands meet at an exceptional
/// point at the edge of the diffusive window; past it the overlap cannot tell
/// them apart, so the band with Re ω > 0 is called G.
pub fn classify_branches(sets: &[ModeSet], phase: Phase) -> Result<Vec<Band>, SpectrumError> {
    let first = sets.first().ok_or(SpectrumError::EmptyPath)?;
    let labels = initial_labels(first, phase);
    let mut bands: Vec<Band> = labels
        .into_iter()
        .enumerate()
        .map(|(a, l)| Band {
            label: l,
            modes: vec![a],
        })
        .collect();
    for i in 0..sets.len() - 1 {
        let perm = match_modes(&sets[i], &sets[i + 1], i)?;
        for b in bands.iter_mut() {
            let last = *b.modes.last().unwrap();
            b.modes.push(perm[last]);
        }
    }
    // the trace direction is known exactly at every k
    for b in bands.iter_mut() {
        if b.label == BranchLabel::Trace {
            for (m, s) in b.modes.iter_mut().zip(sets) {
                if *m != s.trace_mode {
                    return Err(SpectrumError::TrackingAmbiguity {
                        from: 0,
                        to: sets.len() - 1,
                        overlap: 0.0,
                    });
                }
            }
        }
    }
    if phase == Phase::Sfp {
        let gi = bands.iter().position(|b| b.label == BranchLabel::G);
        let ai = bands.iter().position(|b| b.label == BranchLabel::A);
        if let (Some(gi), Some(ai)) = (gi, ai) {
            for (i, s) in sets.iter().enumerate() {
                let (g, a) = (bands[gi].modes[i], bands[ai].modes[i]);
                if s.omega[g].re < -IMAG_TOL && s.omega[a].re > IMAG_TOL {
                    bands[gi].modes[i] = a;
                    bands[ai].modes[i] = g;
                }
            }
        }
    }
    Ok(bands)
}

/// Per-k label of every mode, from tracked bands.
pub fn labels_at(bands: &[Band], k_index: usize, n_modes: usize) -> Vec<BranchLabel> {
    let mut out = vec![BranchLabel::Other; n_modes];
    for b in bands {
        out[b.modes[k_index]] = b.label;
    }
    out
}

pub fn band(bands: &[Band], label: BranchLabel) -> Option<&Band> {
    bands.iter().find(|b| b.label == label)
}

/// k-indices where the band is diffusive: |Re ω| < 0.1 |Im ω|.
pub fn diffusive_window(sets: &[ModeSet], b: &Band) -> Vec<usize> {
    b.omega(sets)
        .iter()
        .enumerate()
        .filter(|(_, w)| w.re.abs() < 0.1 * w.im.abs())
        .map(|(i, _)| i)
        .collect()
}

/// max_α min_β |ω_β + ω_α*| over the modes of one k-point.
pub fn pairing_error(s: &ModeSet) -> f64 {
    s.omega
        .iter()
        .map(|w| {
            s.omega
                .iter()
                .map(|v| (v + w.conj()).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stability {
    pub stable: bool,
    /// (k, mode, Im ω) of the least damped non-trace mode.
    pub worst: Option<(Vec<f64>, usize, f64)>,
}

/// Stable iff every mode but the trace mode has Im ω ≤ `zero_mode_tol`.
pub fn stability_check(s: &ModeSet, zero_mode_tol: f64) -> Stability {
    let worst = s
        .physical()
        .max_by(|&a, &b| s.omega[a].im.total_cmp(&s.omega[b].im));
    match worst {
        Some(a) => Stability {
            stable: s.omega[a].im <= zero_mode_tol,
            worst: Some((s.k.clone(), a, s.omega[a].im)),
        },
        None => Stability {
            stable: true,
            worst: None,
        },
    }
}

/// Worst case of `stability_check` over several k-points.
pub fn stability_over(sets: &[ModeSet], zero_mode_tol: f64) -> Stability {
    let mut out = Stability {
        stable: true,
        worst: None,
    };
    for s in sets {
        let st = stability_check(s, zero_mode_tol);
        let worse = match (&out.worst, &st.worst) {
            (None, _) => true,
            (Some(a), Some(b)) => b.2 > a.2,
            _ => false,
        };
        if worse {
            out.worst = st.worst;
        }
        out.stable &= st.stable;
    }
    out
}
