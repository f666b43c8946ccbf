//! Configuration, file formats and subcommands for the `ctrnn-spectra`
//! binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod report;

use std::fs;
use std::io::Write;
use std::path::Path;

pub use commands::{execute, Command, Outcome};
pub use config::{Overrides, RunConfig};
pub use error::CliError;

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// Loads the config, applies flag overrides, runs `cmd` and writes its
/// output to the configured path or stdout. Warnings go to stderr.
pub fn run(cmd: Command, config_path: &Path, overrides: Overrides) -> Result<(), CliError> {
    let mut cfg = RunConfig::load(config_path)?;
    cfg.apply(overrides)?;
    let outcome = execute(cmd, &cfg)?;
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    for (path, bytes) in &outcome.side_files {
        write_file(path, bytes)?;
    }
    match &cfg.output.path {
        Some(path) => write_file(path, &outcome.body),
        None => std::io::stdout()
            .lock()
            .write_all(&outcome.body)
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}
