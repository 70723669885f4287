use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("atom count must be at least 2, got {0}")]
    AtomCountTooSmall(usize),

    #[error("operation requires an even atom count, got {0}")]
    OddAtomCount(usize),

    #[error("state vector has squared norm {norm_sqr} (expected 1 within {tol})")]
    NotNormalized { norm_sqr: f64, tol: f64 },

    #[error("amplitude vector has length {got}, basis dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("states live in different systems: N = {0} vs N = {1}")]
    SystemMismatch(usize, usize),

    #[error("mode occupations ({n_minus}, {n_zero}, {n_plus}) do not sum to N = {n}")]
    BadOccupations {
        n_minus: usize,
        n_zero: usize,
        n_plus: usize,
        n: usize,
    },

    #[error("eigensolver failed to converge: {0}")]
    EigenFailure(String),

    #[error("propagation aborted: {0}")]
    PropagationFailure(String),

    #[error("full-space oracle capped at N = {cap}, requested N = {n}")]
    OracleCap { n: usize, cap: usize },

    #[error("index {0} outside the valid range {1}")]
    IndexOutOfRange(usize, usize),

    #[error("sector N_h = {0} has zero probability")]
    EmptySector(usize),

    #[error("direction vector must have unit norm, got |u| = {0}")]
    NotUnitDirection(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
