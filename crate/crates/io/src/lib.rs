//! Configuration, sweep orchestration and result files for the driven
//! cavity-array pipeline.
//!
//! A run reads a TOML [`RunConfig`], evaluates its grid in index order (in
//! parallel when allowed) and writes one CSV per task plus `manifest.json`.
//! Output bytes depend only on the config, never on the worker count.

pub mod config;
pub mod run;
pub mod table;

pub use config::{parse_config, read_config, Axis, ConfigError, RunConfig, Task};
pub use run::{run, Failure, RunError, RunReport};
pub use table::fmt_f64;
