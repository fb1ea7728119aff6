use ddbh_core::Execution;
use ddbh_io::{parse_config, run};
use serde_json::Value;
use std::path::Path;
use std::process::Command;

fn csv_rows(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# units:"));
    let header = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_owned)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect();
    (header, rows)
}

#[test]
fn equilibrium_run_writes_matching_columns() {
    let cfg = parse_config("task = \"equilibrium\"\n[equilibrium]\nomega_c = -1.0\npoints = 40\n")
        .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let rep = run(&cfg, dir.path(), Execution::Sequential).unwrap();
    assert_eq!(rep.exit_code(), 0);
    let (header, rows) = csv_rows(&dir.path().join("equilibrium.csv"));
    assert_eq!(
        header,
        ["k", "omega_G_closed_form", "omega_G_numeric", "c_s"]
    );
    assert_eq!(rows.len(), 40);
    for r in &rows {
        let a: f64 = r[1].parse().unwrap();
        let b: f64 = r[2].parse().unwrap();
        assert!((a - b).abs() < 1e-10, "{r:?}");
    }
    assert!(rep.manifest["max_abs_closed_vs_numeric"].as_f64().unwrap() < 1e-10);
}

#[test]
fn manifest_records_config_and_files() {
    let cfg = parse_config("task = \"ness\"\nout = \"ignored\"\n[model]\nrabi = 0.5\nzj = 0.5\n")
        .unwrap();
    let dir = tempfile::tempdir().unwrap();
    run(&cfg, dir.path(), Execution::Sequential).unwrap();
    let m: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(m["task"], "ness");
    assert_eq!(m["config_hash"], cfg.hash());
    assert_eq!(m["config"]["model"]["rabi"], 0.5);
    assert!(m["config"].get("out").is_none());
    let files: Vec<&str> = m["files"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(files, ["ness.csv", "state.csv"]);
    assert!(m["failures"].as_array().unwrap().is_empty());

    let (header, rows) = csv_rows(&dir.path().join("ness.csv"));
    assert_eq!(rows.len(), 1);
    let phase = header.iter().position(|h| h == "phase").unwrap();
    assert_eq!(rows[0][phase], "IP");
    let (_, state) = csv_rows(&dir.path().join("state.csv"));
    // hard core: 2 × 2 Fock pairs × 2 × 2 spin pairs
    assert_eq!(state.len(), 16);
}

#[test]
fn repeated_spectrum_runs_are_byte_identical() {
    let text = "task = \"spectrum\"\n[model]\nrabi = 0.3\nzj = 3.0\n";
    let cfg = parse_config(text).unwrap();
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert_eq!(
        run(&cfg, a.path(), Execution::Sequential)
            .unwrap()
            .exit_code(),
        0
    );
    run(&cfg, b.path(), Execution::Parallel).unwrap();
    for f in ["spectrum.csv", "manifest.json"] {
        assert_eq!(
            std::fs::read(a.path().join(f)).unwrap(),
            std::fs::read(b.path().join(f)).unwrap(),
            "{f}"
        );
    }
    let (header, rows) = csv_rows(&a.path().join("spectrum.csv"));
    assert_eq!(&header[..4], ["k_index", "kx", "ky", "branch_label"]);
    assert!(rows.iter().any(|r| r[3] == "G"));
}

#[test]
fn cli_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ddbh");
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    };
    let bad = write("bad.toml", "task = \"ness\"\n[model]\ngamma_l = -1.0\n");
    let out = Command::new(bin)
        .args(["ness", "--config"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("model.gamma_l"));

    let eq = write(
        "eq.toml",
        "task = \"equilibrium\"\n[equilibrium]\npoints = 5\n",
    );
    let out = Command::new(bin)
        .args(["ness", "--config"])
        .arg(&eq)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "task mismatch");

    let dest = dir.path().join("eq_out");
    let out = Command::new(bin)
        .args(["equilibrium", "--workers", "1", "--config"])
        .arg(&eq)
        .arg("--out")
        .arg(&dest)
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(dest.join("equilibrium.csv").exists() && dest.join("manifest.json").exists());
}
