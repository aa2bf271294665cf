use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |m - m^dagger| = {max_asymmetry:e})")]
    NotHermitian { max_asymmetry: f64 },
    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_diagonal:e})")]
    NonConvergence { sweeps: usize, off_diagonal: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("non-finite entry in input")]
    NonFinite,
    #[error("value {value} lies outside the domain of the scalar function")]
    DomainError { value: f64 },
    #[error("parameter `{name}` = {value} is outside its admissible range ({range})")]
    ParamDomain {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("operator is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },
    #[error("operator is not an isometry (residual {residual:e})")]
    NotIsometry { residual: f64 },
    #[error("operators violate the completeness relation (residual {residual:e})")]
    CompletenessViolation { residual: f64 },
    #[error("projectors are not mutually orthogonal idempotents (residual {residual:e})")]
    NotProjective { residual: f64 },
    #[error("effect {index} is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositiveEffect { index: usize, min_eigenvalue: f64 },
    #[error("effect {index} is not rank one")]
    NotRankOne { index: usize },
    #[error("operator is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },
    #[error("state vector norm is {norm}, expected 1")]
    NotNormalized { norm: f64 },
    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),
    #[error("measurement outcome {index} has probability {probability:e}")]
    ZeroProbabilityOutcome { index: usize, probability: f64 },
    #[error("inequality violated: {what} ({lhs} > {rhs})")]
    InequalityViolated {
        what: &'static str,
        lhs: f64,
        rhs: f64,
    },
    #[error("invalid family specification: {0}")]
    InvalidFamilySpec(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}
