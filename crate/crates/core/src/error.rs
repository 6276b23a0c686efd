use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed fields: {0} and {1}")]
    FieldMismatch(String, String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("duplicate point {0}")]
    DuplicatePoint(String),
    #[error("empty input")]
    Empty,
    #[error("inseparable: the point lies in the subspace")]
    Inseparable,
    #[error("no proper hyperplane contains a full-dimensional subspace")]
    NoProperHyperplane,
    #[error("zero normal vector")]
    ZeroNormal,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("point {0} is not in the point set")]
    PointNotInSet(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no declared symmetry for {0}")]
    NoDeclaredSymmetry(String),
    #[error("affine map does not preserve the point set: {0} is mapped outside")]
    NotASymmetry(String),
    #[error("affine map is not invertible")]
    SingularMap,
    #[error("too many points for the cover solver: {0} (limit 128)")]
    TooManyPoints(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
