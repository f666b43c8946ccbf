#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_ctrnn-spectra")
}

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn config(name: &str) -> PathBuf {
    crate_dir().join("configs").join(name)
}

pub fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

pub fn run_config(cmd: &str, cfg: &Path, extra: &[&str]) -> Output {
    let cfg = cfg.to_str().unwrap();
    let mut args = vec![cmd, "--config", cfg];
    args.extend_from_slice(extra);
    run(&args)
}

/// `(golden file, subcommand, config, extra flags)` for every bundled example.
pub const GOLDEN_CASES: &[(&str, &str, &str, &[&str])] = &[
    ("check_harmonic.json", "check", "harmonic.json", &[]),
    ("check_case2.json", "check", "case2.json", &[]),
    ("check_not_hamiltonian.json", "check", "not_hamiltonian.json", &[]),
    ("spectrum_harmonic.json", "spectrum", "harmonic.json", &[]),
    ("spectrum_case2.json", "spectrum", "case2.json", &["--variant", "printed"]),
    ("spectrum_center.json", "spectrum", "center.json", &[]),
    ("verify_harmonic.json", "verify", "harmonic.json", &[]),
    ("verify_case2.json", "verify", "case2.json", &[]),
    ("verify_center.json", "verify", "center.json", &[]),
    ("scan_admissibility.csv", "scan", "scan_admissibility.json", &[]),
    ("contour_harmonic.csv", "contour", "harmonic.json", &[]),
    ("contour_center.csv", "contour", "center.json", &[]),
    ("simulate_center.csv", "simulate", "center.json", &[]),
    ("simulate_decoupled.csv", "simulate", "decoupled.json", &[]),
    ("simulate_three_node.csv", "simulate", "three_node.json", &["--t-end", "0.5", "--dt", "0.05"]),
];

/// Runs one golden case and returns a description of any mismatch. Setting
/// `CTRNN_SPECTRA_BLESS=1` rewrites the golden file instead.
pub fn check_golden(golden: &str, cmd: &str, cfg: &str, extra: &[&str]) -> Result<(), String> {
    let out = run_config(cmd, &config(cfg), extra);
    if !out.status.success() {
        return Err(format!("{golden}: exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    let path = crate_dir().join("tests").join("golden").join(golden);
    if std::env::var_os("CTRNN_SPECTRA_BLESS").is_some() {
        std::fs::write(&path, &out.stdout).unwrap();
        return Ok(());
    }
    let expected = std::fs::read(&path).map_err(|e| format!("{golden}: {e}"))?;
    if expected != out.stdout {
        return Err(format!("{golden}: output differs from golden file"));
    }
    Ok(())
}

/// `(description, subcommand, config body, extra flags, expected exit code)`.
pub fn exit_code_cases() -> Vec<(&'static str, &'static str, String, Vec<&'static str>, i32)> {
    let read = |name: &str| std::fs::read_to_string(config(name)).unwrap();
    let harmonic = read("harmonic.json");
    let case2 = read("case2.json");
    vec![
        ("success", "check", harmonic.clone(), vec![], 0),
        ("malformed JSON", "check", harmonic.replace("\"w12\": 2.0", "\"w12\": 2.0,,"), vec![], 2),
        ("wrong key type", "check", harmonic.replace("\"tau1\": 1.0", "\"tau1\": \"one\""), vec![], 2),
        ("undefined format", "check", harmonic.clone(), vec!["--format", "csv"], 2),
        ("undefined format", "contour", harmonic.clone(), vec!["--format", "json"], 2),
        ("missing output dir", "check", harmonic.clone(), vec!["--output", "/nonexistent/dir/out.json"], 2),
        ("missing sweep", "scan", harmonic.clone(), vec![], 2),
        (
            "divergence",
            "simulate",
            r#"{"network": {"n": 1, "tau": [0.01], "weights": [[400.0]], "theta": [0.0], "inputs": [0.0]},
                "simulate": {"y0": [1.0], "t_end": 10.0, "dt": 0.001}}"#
                .to_owned(),
            vec![],
            3,
        ),
        ("three nodes", "check", read("three_node.json"), vec![], 4),
        ("three nodes", "spectrum", read("three_node.json"), vec![], 4),
        ("not Hamiltonian", "spectrum", read("not_hamiltonian.json"), vec![], 5),
        ("not Hamiltonian", "verify", read("not_hamiltonian.json"), vec![], 5),
        ("not Hamiltonian", "contour", read("not_hamiltonian.json"), vec![], 5),
        (
            "oracle iteration cap",
            "verify",
            case2.replace("\"m_max\": 2", "\"m_max\": 2, \"tolerances\": {\"oracle_max_iter\": 1}"),
            vec![],
            6,
        ),
    ]
}

/// Runs every exit-code case and returns the failures.
pub fn check_exit_codes() -> Vec<String> {
    let dir = tempfile::tempdir().unwrap();
    let mut failures = Vec::new();
    for (k, (what, cmd, body, extra, expected)) in exit_code_cases().into_iter().enumerate() {
        let path = dir.path().join(format!("case{k}.json"));
        std::fs::write(&path, body).unwrap();
        let out = run_config(cmd, &path, &extra);
        if out.status.code() != Some(expected) {
            failures.push(format!(
                "{what} ({cmd}): expected exit {expected}, got {:?}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr).trim()
            ));
        }
    }
    failures
}
