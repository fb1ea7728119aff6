use clap::{Args, Parser, Subcommand};
use ddbh_core::Execution;
use ddbh_io::{read_config, run, Task};
use std::path::PathBuf;
use std::process::ExitCode;

/// Steady states, collective modes and response of a pumped cavity array.
#[derive(Parser, Debug)]
#[command(name = "ddbh", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Steady state at one point or along a sweep.
    Ness(Common),
    /// Steady-state observables over a 2D (Ω, J) grid.
    PhaseDiagram(Common),
    /// Collective modes along a k-path.
    Spectrum(Common),
    /// Green's function, DoS and optical response on a (k, ω) grid.
    Response(Common),
    /// Hard-core equilibrium Goldstone branch.
    Equilibrium(Common),
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    /// Output directory (default: `out` in the config, else ./out).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, env = "DDBH_WORKERS")]
    workers: Option<usize>,
    #[arg(long, short)]
    verbose: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (task, args) = match cli.cmd {
        Cmd::Ness(a) => (Task::Ness, a),
        Cmd::PhaseDiagram(a) => (Task::PhaseDiagram, a),
        Cmd::Spectrum(a) => (Task::Spectrum, a),
        Cmd::Response(a) => (Task::Response, a),
        Cmd::Equilibrium(a) => (Task::Equilibrium, a),
    };
    let level = if args.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let cfg = match read_config(&args.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if cfg.task != task {
        eprintln!(
            "error: config task is `{}` but the subcommand asks for `{}`",
            cfg.task.as_str(),
            task.as_str()
        );
        return ExitCode::from(2);
    }
    let workers = args.workers.or(cfg.workers);
    if workers == Some(0) {
        eprintln!("error: --workers must be >= 1");
        return ExitCode::from(2);
    }
    let dir = args
        .out
        .or_else(|| cfg.out.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"));

    match run(&cfg, &dir, Execution::from_workers(workers)) {
        Ok(rep) => {
            for f in &rep.failures {
                log::warn!("point {}: {}", f.index, f.what);
            }
            log::info!("wrote {} files to {}", rep.files.len(), dir.display());
            if rep.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                eprintln!(
                    "{} point(s) failed, see {}",
                    rep.failures.len(),
                    dir.join("manifest.json").display()
                );
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
