use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left} vs {right}")]
    DimensionMismatch {
        op: &'static str,
        left: usize,
        right: usize,
    },
    #[error("matrix data has {got} entries, expected {expected}")]
    BadShape { expected: usize, got: usize },
    #[error("state vector is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },
    #[error("not a valid density matrix: {0}")]
    InvalidDensityMatrix(String),
    #[error("matrix is not unitary (defect {defect:e})")]
    NotUnitary { defect: f64 },
    #[error("not a valid eigenbasis: {0}")]
    InvalidBasis(String),
    #[error("non-finite parameter {name} = {value}")]
    NonFinite { name: &'static str, value: f64 },
    #[error("parameter {name} = {value} outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("outcome {outcome} is not an eigenvalue of the measured observable")]
    UnknownOutcome { outcome: f64 },
    #[error("outcome {outcome} has probability {probability:e}; post-measurement state undefined")]
    ZeroProbability { outcome: f64, probability: f64 },
    #[error("invalid correlator pair ({r}, {s})")]
    InvalidPair { r: usize, s: usize },
    #[error("invalid parameter box: {0}")]
    InvalidBox(String),
    #[error("grid of {requested} evaluations exceeds the budget of {budget}")]
    BudgetExceeded { requested: u128, budget: u128 },
    #[error("objective returned {value} at {point:?}")]
    NonFiniteObjective { point: Vec<f64>, value: f64 },
}
