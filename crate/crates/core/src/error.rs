use thiserror::Error;

/// Errors raised by the engine library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix must be square: {entries} entries do not form a {dim}x{dim} matrix")]
    NotSquare { dim: usize, entries: usize },

    #[error("matrix dimension must be positive")]
    EmptyMatrix,

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian: max |A - A^dag| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary: max |U U^dag - I| = {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("eigendecomposition did not converge after {sweeps} sweeps (off-diagonal residual {residual:e})")]
    EigenNoConvergence { sweeps: usize, residual: f64 },

    #[error("spectral function is not finite at eigenvalue {eigenvalue}")]
    SpectralFunctionUndefined { eigenvalue: f64 },

    #[error("not a density matrix: {reason}")]
    InvalidDensityMatrix { reason: String },

    #[error("invalid partition: {reason}")]
    InvalidPartition { reason: String },

    #[error("invalid engine specification: {reason}")]
    InvalidSpec { reason: String },

    #[error("invalid measurement set: {reason}")]
    InvalidMeasurement { reason: String },

    #[error("feedback policy has {found} unitaries but the measurement has {expected} outcomes")]
    PolicyLength { expected: usize, found: usize },

    #[error("invalid probability distribution: {reason}")]
    InvalidDistribution { reason: String },

    #[error("measurement set is not fine-grained: projector {index} has rank {rank}")]
    NotFineGrained { index: usize, rank: usize },

    #[error("degenerate heat intake: {quantity} = {value:e}")]
    DegenerateHeatIntake { quantity: &'static str, value: f64 },

    #[error("record does not match scenario {scenario}: {reason}")]
    ScenarioMismatch { scenario: String, reason: String },

    #[error("unknown scenario '{0}'")]
    UnknownScenario(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
