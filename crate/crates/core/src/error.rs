use thiserror::Error;

/// Errors raised by the signaling, polytope and quantum routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("number of locations must be at least {min}, got {n}")]
    TooFewLocations { n: usize, min: usize },

    #[error("size guard: {what} (limit {limit}, got {got})")]
    SizeGuard {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("behavior table must have {expected} entries, got {got}")]
    TableLength { expected: usize, got: usize },

    #[error("probability {value} at index {index} is outside [0, 1]")]
    ProbabilityOutOfRange { index: usize, value: f64 },

    #[error("priors must be nonnegative and sum to 1 (sum {sum})")]
    InvalidPriors { sum: f64 },

    #[error("query count k={k} exceeds the number of locations N={n}")]
    TooManyQueries { k: usize, n: usize },

    #[error("invalid vertex: {0}")]
    InvalidVertex(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("state is not normalised (norm² = {0})")]
    NotNormalized(f64),

    #[error("not a density operator: {0}")]
    InvalidDensity(String),

    #[error("not a valid POVM: {0}")]
    InvalidPovm(String),

    #[error("phase {0} is not finite")]
    NonFinitePhase(f64),

    #[error("marked location {index} outside 1..={n}")]
    MarkedOutOfRange { index: usize, n: usize },

    #[error("closed form requires a marked location")]
    MissingMarked,
}

pub type Result<T> = std::result::Result<T, Error>;
