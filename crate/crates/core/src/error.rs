use alloc::string::String;

/// Errors raised by constructions, certifiers and conversions.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("vector {index} has length {found}, expected dimension {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("line set must contain at least {required} vectors, found {found}")]
    TooFewVectors { required: usize, found: usize },
    #[error("dimension must be at least {min}, got {found}")]
    DimensionTooSmall { min: usize, found: usize },
    #[error("vector {index} has norm {norm}, expected 1")]
    NotUnitNorm { index: usize, norm: f64 },
    #[error("vector {index} has a nonzero imaginary part in a real line set")]
    NotReal { index: usize },
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("Gram entry ({row}, {col}) = {value} is not within {tol} of +/-{alpha}")]
    NotEquiangularGram {
        row: usize,
        col: usize,
        value: f64,
        alpha: f64,
        tol: f64,
    },
    #[error("alpha must be positive, got {0}")]
    NonPositiveAlpha(f64),
    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },
    #[error("no lines are orthogonal to the restriction vector (0 of {total} retained)")]
    EmptyRestriction { total: usize },
    #[error("restriction vector is zero")]
    ZeroVector,
    #[error("not a Leech lattice vector of type 3: {0}")]
    NotType3(String),
    #[error("found {found} type-2 pairs summing to the type-3 vector, expected 276")]
    PairCount { found: usize },
    #[error("unsupported Leech vector type {0} (expected 2 or 3)")]
    UnsupportedType(u32),
    #[error("vertex count {found} exceeds the exhaustive-search limit {limit}")]
    TooLarge { found: usize, limit: usize },
    #[error("graphs have different vertex counts ({0} vs {1})")]
    VertexCountMismatch(usize, usize),
    #[error("invalid Seidel matrix: {0}")]
    InvalidSeidel(String),
    #[error("expected {expected} vectors, found {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("invalid density operator: {0}")]
    InvalidDensity(String),
    #[error("invalid probability vector: {0}")]
    InvalidProbabilities(String),
    #[error("overlap ({row}, {col}) has magnitude {magnitude}; phase undefined")]
    PhaseUndefined {
        row: usize,
        col: usize,
        magnitude: f64,
    },
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
}

pub type Result<T> = core::result::Result<T, Error>;
