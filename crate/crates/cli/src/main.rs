use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use ctrnn_spectra::config::{Format, VariantName};
use ctrnn_spectra::{run, Command, Overrides};

/// Simulate ReLU CTRNNs, check Hamiltonicity and verify the quantized spectrum.
///
/// Exit codes: 0 success, 2 config error, 3 divergence, 4 network not
/// planar, 5 not Hamiltonian, 6 oracle failure, 1 anything else.
#[derive(Debug, Parser)]
#[command(name = "ctrnn-spectra", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output file; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, alias = "output-format")]
    format: Option<Format>,
    /// Exponent variant used for sampled eigenfunctions.
    #[arg(long, value_enum)]
    variant: Option<VariantName>,
    #[arg(long)]
    m_max: Option<usize>,
    #[arg(long)]
    t_end: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    /// Contour grid points per axis.
    #[arg(long)]
    resolution: Option<usize>,
    /// Directory for sampled eigenfunctions (spectrum only).
    #[arg(long)]
    samples_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let overrides = Overrides {
        output: cli.output,
        format: cli.format,
        variant: cli.variant,
        m_max: cli.m_max,
        t_end: cli.t_end,
        dt: cli.dt,
        resolution: cli.resolution,
        samples_dir: cli.samples_dir,
    };
    match run(cli.command, &cli.config, overrides) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
