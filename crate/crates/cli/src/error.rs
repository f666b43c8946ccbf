use ctrnn_spectra_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("integration diverged at t = {time}")]
    Divergence { time: f64 },
    #[error("this subcommand needs a planar network (n = 2), got n = {0}")]
    Dimension(usize),
    #[error("network is not Hamiltonian (mismatch {mismatch:e})")]
    NotHamiltonian { mismatch: f64 },
    #[error("oracle failure: {0}")]
    Oracle(CoreError),
    #[error("computation failed: {0}")]
    Compute(CoreError),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Divergence { .. } => 3,
            CliError::Dimension(_) => 4,
            CliError::NotHamiltonian { .. } => 5,
            CliError::Oracle(_) => 6,
            CliError::Compute(_) | CliError::Io { .. } => 1,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Divergence { time } => CliError::Divergence { time },
            CoreError::NotPlanar(n) => CliError::Dimension(n),
            CoreError::NotHamiltonian { mismatch } => CliError::NotHamiltonian { mismatch },
            CoreError::E2Disagreement { from_w11, from_w22 } => {
                CliError::NotHamiltonian { mismatch: from_w11 - from_w22 }
            }
            CoreError::NoConvergence(_)
            | CoreError::InverseIterationNoConvergence(_)
            | CoreError::SingularShift
            | CoreError::NotSymmetric
            | CoreError::TooManyEigenvalues { .. } => CliError::Oracle(e),
            CoreError::InvalidParams(_)
            | CoreError::DimensionMismatch { .. }
            | CoreError::NonPositiveTau(_)
            | CoreError::DegenerateRange { .. }
            | CoreError::Precondition(_) => CliError::Config(e.to_string()),
            _ => CliError::Compute(e),
        }
    }
}
