use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(&'static str),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operation requires a two-node network, got n = {0}")]
    NotPlanar(usize),

    #[error("non-finite state encountered at t = {time}")]
    Divergence { time: f64 },

    #[error("precondition violated: {0}")]
    Precondition(&'static str),

    #[error("network is not Hamiltonian (mismatch {mismatch:e})")]
    NotHamiltonian { mismatch: f64 },

    #[error("E2 expressions disagree: {from_w11} from w11 vs {from_w22} from w22")]
    E2Disagreement { from_w11: f64, from_w22: f64 },

    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),

    #[error("non-positive time constant tau1 = {0}")]
    NonPositiveTau(f64),

    #[error("degenerate range [{lo}, {hi}]")]
    DegenerateRange { lo: f64, hi: f64 },

    #[error("Kummer series has a pole: b is a non-positive integer")]
    KummerPole,

    #[error("series did not converge within {0} terms")]
    NoConvergence(usize),

    #[error("factorial overflow: n = {0} exceeds the supported range")]
    FactorialOverflow(usize),

    #[error("eigenfunction undefined: {0}")]
    EigenfunctionUndefined(&'static str),

    #[error("zero norm")]
    ZeroNorm,

    #[error("operator is not symmetric")]
    NotSymmetric,

    #[error("requested {requested} eigenvalues from a matrix of dimension {dim}")]
    TooManyEigenvalues { requested: usize, dim: usize },

    #[error("inverse iteration did not converge within {0} iterations")]
    InverseIterationNoConvergence(usize),

    #[error("singular shifted system")]
    SingularShift,
}
