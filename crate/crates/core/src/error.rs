use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("local-energy profile has no sites")]
    EmptyProfile,
    #[error("local energy is undefined at every site")]
    AllUndefined,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("band coefficients are not Hermitian at site {site}, offset {offset:?}")]
    NonHermitian { site: usize, offset: Vec<i64> },
    #[error("test vector component {index} is not strictly positive ({value})")]
    NonPositiveTestVector { index: usize, value: f64 },
    #[error("test function is not strictly positive at {point:?} ({value})")]
    NonPositiveTestFunction { point: Vec<f64>, value: f64 },
    #[error("period {0} is too small, Bloch matrices need N >= 3")]
    PeriodTooSmall(usize),
    #[error("M = {m} and N = {n} are not coprime")]
    NotCoprime { m: usize, n: usize },
    #[error("matrix is not symmetric (|a_ij - a_ji| = {0:e})")]
    NotSymmetric(f64),
    #[error("matrix size {size} exceeds the limit {limit}")]
    SizeExceeded { size: usize, limit: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("{0} did not converge")]
    NotConverged(&'static str),
    #[error("points {i} and {j} coincide")]
    CoincidentPoints { i: usize, j: usize },
    #[error("pair function ({i},{j}) is undefined at r = {r}")]
    UndefinedPairFunction { i: usize, j: usize, r: f64 },
    #[error("invalid cluster size: need N >= M >= 3, got N = {n}, M = {m}")]
    InvalidClusterSize { n: usize, m: usize },
    #[error("invalid alpha source: {0}")]
    InvalidSource(String),
    #[error("s must be strictly positive, got {0}")]
    NonPositiveS(f64),
    #[error("unknown configuration name `{0}`")]
    UnknownName(String),
    #[error("invalid dimension d = {0}, need d >= 2")]
    InvalidDimension(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
