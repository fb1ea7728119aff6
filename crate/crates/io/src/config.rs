//! TOML run configuration.
//!
//! ```toml
//! task = "phase_diagram"
//!
//! [model]
//! rabi = 0.16
//! zj = 1.0          # or j = ...
//!
//! [[sweep]]
//! param = "zj"
//! min = 0.0
//! max = 2.5
//! count = 60
//! ```
//!
//! Every table rejects unknown keys. Absent keys take the defaults below.

use ddbh_core::Execution;
use ddbh_core::ModelParams;
use ddbh_equilibrium::HardCoreParams;
use ddbh_meanfield::{PropagateOptions, ScanOptions};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    /// Syntax, type mismatch, missing or unknown key. The message carries
    /// the line and key from the TOML parser.
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("invalid value for `{key}`: {msg}")]
    Invalid { key: String, msg: String },
    #[error("cannot read config {path}: {msg}")]
    Read { path: String, msg: String },
}

fn invalid(key: &str, msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        key: key.to_string(),
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Ness,
    PhaseDiagram,
    Spectrum,
    Response,
    Equilibrium,
}

impl Task {
    pub fn as_str(self) -> &'static str {
        match self {
            Task::Ness => "ness",
            Task::PhaseDiagram => "phase_diagram",
            Task::Spectrum => "spectrum",
            Task::Response => "response",
            Task::Equilibrium => "equilibrium",
        }
    }
}

/// Couplings in units of Γ_p (any consistent unit works).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelSection {
    pub j: f64,
    /// Alternative to `j`; folded into `j` during parsing.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zj: Option<f64>,
    pub u: f64,
    pub hard_core: bool,
    pub n_max: usize,
    pub omega_c: f64,
    /// Absent means ω_c − zJ at every grid point.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_at: Option<f64>,
    pub rabi: f64,
    pub gamma_l: f64,
    pub gamma_p: f64,
    pub gamma: f64,
    pub d: usize,
}

impl Default for ModelSection {
    fn default() -> Self {
        let p = ModelParams::default();
        ModelSection {
            j: p.j,
            zj: None,
            u: p.u,
            hard_core: p.hard_core,
            n_max: p.n_max,
            omega_c: p.omega_c,
            omega_at: p.omega_at,
            rabi: p.rabi,
            gamma_l: p.gamma_l,
            gamma_p: p.gamma_p,
            gamma: p.gamma,
            d: p.d,
        }
    }
}

impl ModelSection {
    pub fn params(&self) -> ModelParams {
        ModelParams {
            j: self.j,
            u: self.u,
            hard_core: self.hard_core,
            n_max: self.n_max,
            omega_c: self.omega_c,
            omega_at: self.omega_at,
            rabi: self.rabi,
            gamma_l: self.gamma_l,
            gamma_p: self.gamma_p,
            gamma: self.gamma,
            d: self.d,
        }
    }
}

/// Parameters a sweep axis may move.
pub const SWEEP_PARAMS: [&str; 9] = [
    "j", "zj", "u", "omega_c", "omega_at", "rabi", "gamma_l", "gamma_p", "gamma",
];

/// Sets one named parameter. `zj` writes J = zj/z.
pub fn set_param(p: &mut ModelParams, name: &str, v: f64) -> Result<(), ConfigError> {
    match name {
        "j" => p.j = v,
        "zj" => p.j = v / p.z(),
        "u" => p.u = v,
        "omega_c" => p.omega_c = v,
        "omega_at" => p.omega_at = Some(v),
        "rabi" => p.rabi = v,
        "gamma_l" => p.gamma_l = v,
        "gamma_p" => p.gamma_p = v,
        "gamma" => p.gamma = v,
        _ => {
            return Err(invalid(
                "sweep.param",
                format!("unknown parameter `{name}`"),
            ))
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub param: String,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        match self.count {
            0 => Vec::new(),
            1 => vec![self.min],
            n => (0..n)
                .map(|i| self.min + (self.max - self.min) * i as f64 / (n - 1) as f64)
                .collect(),
        }
    }
}

/// Diagonal path k = (q, …, q), q from `from` to `to`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KPathSection {
    /// Absent: 0 in the insulator, 1e−3 in the superfluid.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub from: Option<f64>,
    pub to: f64,
    pub points: usize,
}

impl Default for KPathSection {
    fn default() -> Self {
        KPathSection {
            from: None,
            to: PI,
            points: 201,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OmegaGridSection {
    /// Absent: zJ(2n₀−1)+ω_c in the insulator (the k=0 quasiparticle line),
    /// 0 in the superfluid, whose spectra live in the co-rotating frame.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center: Option<f64>,
    /// Absent: 10 Γ_p.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub half_width: Option<f64>,
    pub points: usize,
}

impl Default for OmegaGridSection {
    fn default() -> Self {
        OmegaGridSection {
            center: None,
            half_width: None,
            points: 2001,
        }
    }
}

impl OmegaGridSection {
    pub fn grid(&self, center: f64, gamma_p: f64) -> Vec<f64> {
        let h = self.half_width.unwrap_or(10.0 * gamma_p);
        match self.points {
            0 => Vec::new(),
            1 => vec![center],
            n => (0..n)
                .map(|i| center - h + 2.0 * h * i as f64 / (n - 1) as f64)
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct IntegratorSection {
    pub dt: f64,
    pub t_max: f64,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<f64>,
    pub psi_threshold: f64,
    pub sample_every: usize,
    pub warm_start: bool,
    pub seed_eps: f64,
    /// Share of warm-started points rerun from a cold start as a check.
    pub cold_check_fraction: f64,
}

impl Default for IntegratorSection {
    fn default() -> Self {
        let p = PropagateOptions::default();
        IntegratorSection {
            dt: p.dt,
            t_max: p.t_max,
            tol: p.tol,
            window: p.window,
            psi_threshold: p.psi_threshold,
            sample_every: p.sample_every,
            warm_start: true,
            seed_eps: 1e-3,
            cold_check_fraction: 0.05,
        }
    }
}

impl IntegratorSection {
    pub fn propagate(&self) -> PropagateOptions {
        PropagateOptions {
            dt: self.dt,
            t_max: self.t_max,
            tol: self.tol,
            window: self.window,
            psi_threshold: self.psi_threshold,
            sample_every: self.sample_every,
        }
    }
}

/// Mirror amplitudes; absent means √Γ_l.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MirrorSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta_l: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta_r: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EquilibriumSection {
    pub j: f64,
    pub ubar: f64,
    pub omega_c: f64,
    pub z: usize,
    pub points: usize,
    pub k_max: f64,
}

impl Default for EquilibriumSection {
    fn default() -> Self {
        let p = HardCoreParams::default();
        EquilibriumSection {
            j: p.j,
            ubar: p.ubar,
            omega_c: p.omega_c,
            z: p.z,
            points: 100,
            k_max: PI,
        }
    }
}

impl EquilibriumSection {
    pub fn params(&self) -> HardCoreParams {
        HardCoreParams {
            j: self.j,
            ubar: self.ubar,
            omega_c: self.omega_c,
            z: self.z,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub task: Task,
    #[serde(default)]
    pub model: ModelSection,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sweep: Vec<Axis>,
    #[serde(default)]
    pub k_path: KPathSection,
    #[serde(default)]
    pub omega_grid: OmegaGridSection,
    #[serde(default)]
    pub integrator: IntegratorSection,
    #[serde(default)]
    pub mirrors: MirrorSection,
    #[serde(default)]
    pub equilibrium: EquilibriumSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
}

/// Ω ∈ [0.05, 0.6] × zJ ∈ [0, 4], 60 × 60, all in units of Γ_p.
pub fn default_phase_axes(gamma_p: f64) -> Vec<Axis> {
    vec![
        Axis {
            param: "rabi".into(),
            min: 0.05 * gamma_p,
            max: 0.6 * gamma_p,
            count: 60,
        },
        Axis {
            param: "zj".into(),
            min: 0.0,
            max: 4.0 * gamma_p,
            count: 60,
        },
    ]
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut cfg: RunConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
    cfg.resolve()?;
    Ok(cfg)
}

pub fn read_config(path: &std::path::Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Read {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    parse_config(&text)
}

impl RunConfig {
    /// Applies defaults and validates.
    fn resolve(&mut self) -> Result<(), ConfigError> {
        if let Some(zj) = self.model.zj.take() {
            if self.model.j != 0.0 {
                return Err(invalid("model.zj", "give either j or zj, not both"));
            }
            if self.model.d < 1 {
                return Err(invalid("model.d", "must be >= 1"));
            }
            self.model.j = zj / (2.0 * self.model.d as f64);
        }
        if self.task == Task::PhaseDiagram && self.sweep.is_empty() {
            self.sweep = default_phase_axes(self.model.gamma_p);
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let m = &self.model;
        for (k, v) in [
            ("model.rabi", m.rabi),
            ("model.gamma_l", m.gamma_l),
            ("model.gamma", m.gamma),
        ] {
            if v < 0.0 {
                return Err(invalid(k, format!("must be nonnegative, got {v}")));
            }
        }
        if m.gamma_p <= 0.0 {
            return Err(invalid(
                "model.gamma_p",
                format!("must be positive, got {}", m.gamma_p),
            ));
        }
        if m.zj.is_some() {
            return Err(invalid("model.zj", "must be folded into j"));
        }
        m.params()
            .validate()
            .map_err(|e| invalid("model", e.to_string()))?;

        if !self.sweep.is_empty() && !matches!(self.task, Task::Ness | Task::PhaseDiagram) {
            return Err(invalid(
                "sweep",
                format!("task {} does not take sweep axes", self.task.as_str()),
            ));
        }
        for (i, a) in self.sweep.iter().enumerate() {
            let key = format!("sweep[{i}]");
            if !SWEEP_PARAMS.contains(&a.param.as_str()) {
                return Err(invalid(
                    &format!("{key}.param"),
                    format!("unknown parameter `{}`", a.param),
                ));
            }
            if self.sweep[..i].iter().any(|b| b.param == a.param) {
                return Err(invalid(
                    &format!("{key}.param"),
                    format!("`{}` swept twice", a.param),
                ));
            }
            if a.count < 1 {
                return Err(invalid(&format!("{key}.count"), "must be >= 1"));
            }
            if !(a.min.is_finite() && a.max.is_finite()) {
                return Err(invalid(&key, "bounds must be finite"));
            }
            for v in [a.min, a.max] {
                let mut p = m.params();
                set_param(&mut p, &a.param, v)?;
                p.validate().map_err(|e| invalid(&key, e.to_string()))?;
            }
        }
        if self.sweep.iter().any(|a| a.param == "j") && self.sweep.iter().any(|a| a.param == "zj") {
            return Err(invalid("sweep", "j and zj both swept"));
        }

        if self.k_path.points < 1 {
            return Err(invalid("k_path.points", "must be >= 1"));
        }
        if self.omega_grid.points < 1 {
            return Err(invalid("omega_grid.points", "must be >= 1"));
        }
        if let Some(h) = self.omega_grid.half_width {
            if !(h > 0.0) {
                return Err(invalid("omega_grid.half_width", "must be positive"));
            }
        }
        let it = &self.integrator;
        if !(it.dt > 0.0) || !(it.t_max > 0.0) || !(it.tol > 0.0) {
            return Err(invalid("integrator", "dt, t_max and tol must be positive"));
        }
        if it.sample_every < 1 {
            return Err(invalid("integrator.sample_every", "must be >= 1"));
        }
        if !(0.0..=1.0).contains(&it.cold_check_fraction) {
            return Err(invalid(
                "integrator.cold_check_fraction",
                "must lie in [0, 1]",
            ));
        }
        if self.mirrors.eta_r == Some(0.0) {
            return Err(invalid("mirrors.eta_r", "must be nonzero"));
        }
        if self.task == Task::Equilibrium {
            self.equilibrium
                .params()
                .validate()
                .map_err(|e| invalid("equilibrium", e.to_string()))?;
            if self.equilibrium.points < 1 {
                return Err(invalid("equilibrium.points", "must be >= 1"));
            }
        }
        if self.workers == Some(0) {
            return Err(invalid("workers", "must be >= 1"));
        }
        Ok(())
    }

    /// Cartesian product of the sweep axes, first axis outermost.
    pub fn grid(&self) -> Vec<ModelParams> {
        let mut out = vec![self.model.params()];
        for a in &self.sweep {
            let vals = a.values();
            out = out
                .into_iter()
                .flat_map(|p| {
                    vals.iter().map(move |&v| {
                        let mut q = p.clone();
                        // names were checked in validate
                        let _ = set_param(&mut q, &a.param, v);
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// Warm-start chains run along the innermost axis.
    pub fn chain_len(&self) -> usize {
        self.sweep.last().map_or(1, |a| a.count)
    }

    pub fn scan_options(&self, exec: Execution) -> ScanOptions {
        ScanOptions {
            propagate: self.integrator.propagate(),
            warm_start: self.integrator.warm_start,
            chain_len: self.chain_len(),
            seed_eps: self.integrator.seed_eps,
            exec,
        }
    }

    pub fn eta(&self) -> (f64, f64) {
        let d = self.model.gamma_l.sqrt();
        (
            self.mirrors.eta_l.unwrap_or(d),
            self.mirrors.eta_r.unwrap_or(d),
        )
    }

    pub fn to_toml(&self) -> String {
        // every field is representable in TOML
        toml::to_string(self).expect("config serializes")
    }

    /// The fields that can change results for this task, as JSON.
    pub fn semantic(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "task": self.task,
            "model": self.model,
        });
        let o = v.as_object_mut().expect("object");
        match self.task {
            Task::Ness | Task::PhaseDiagram => {
                o.insert("sweep".into(), serde_json::json!(self.sweep));
                o.insert("integrator".into(), serde_json::json!(self.integrator));
            }
            Task::Spectrum => {
                o.insert("integrator".into(), serde_json::json!(self.integrator));
                o.insert("k_path".into(), serde_json::json!(self.k_path));
            }
            Task::Response => {
                o.insert("integrator".into(), serde_json::json!(self.integrator));
                o.insert("k_path".into(), serde_json::json!(self.k_path));
                o.insert("omega_grid".into(), serde_json::json!(self.omega_grid));
                let (l, r) = self.eta();
                o.insert(
                    "mirrors".into(),
                    serde_json::json!({"eta_l": l, "eta_r": r}),
                );
            }
            Task::Equilibrium => {
                o.remove("model");
                o.insert("equilibrium".into(), serde_json::json!(self.equilibrium));
            }
        }
        v
    }

    /// SHA-256 of the semantic fields; output directory and worker count
    /// do not enter.
    pub fn hash(&self) -> String {
        let text = self.semantic().to_string();
        Sha256::digest(text.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}
