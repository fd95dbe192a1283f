use thiserror::Error;

/// Errors raised anywhere in the construction, reduction, companion and
/// eigensolve pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at column {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at column {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("empty input: no polynomial found")]
    EmptyInput,

    #[error("system is not square: {equations} equations in {variables} variables")]
    NonSquare { equations: usize, variables: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("inexact polynomial division: {0}")]
    InexactDivision(String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("symbolic determinant limited to n <= {limit}, got n = {n}")]
    SizeGuard { n: usize, limit: usize },

    #[error("degenerate Fourier grid: axis {axis} has size 0")]
    DegenerateGrid { axis: usize },

    #[error("grid points collide on axis {axis} (|u - v| = {distance:e})")]
    GridCollision { axis: usize, distance: f64 },

    #[error("interpolation unreliable (max rounding deviation {deviation:e}): increase margin or use symbolic path")]
    InterpolationUnreliable { deviation: f64 },

    #[error("all polynomials of the system are zero")]
    ZeroSystem,

    #[error("matrix is singular")]
    Singular,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("a denominator is divisible by the prime {0}")]
    BadDenominator(u64),

    #[error("eigensolver failed to converge on a {size}x{size} matrix: {matrix}")]
    NoConvergence { size: usize, matrix: String },

    #[error("malformed matrix file, line {line}: {msg}")]
    MatrixFile { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
