use num_bigint::{BigInt, BigUint};
use thiserror::Error;

/// Every failure the library reports. The CLI and the C ABI map these onto
/// exit codes and status codes respectively.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("radicand {0} is a perfect square")]
    SquareRadicand(BigUint),
    #[error("radicand must be at least 2, got {0}")]
    RadicandTooSmall(BigUint),
    #[error("denominator of a quadratic irrational must be nonzero")]
    ZeroDenominator,
    #[error("period exceeds the configured limit of {limit} states")]
    PeriodLimit { limit: usize },
    #[error("x^2 - {d}y^2 = {n} has no solution")]
    NoSolution { d: BigUint, n: i32 },
    #[error("N must be one of 1, -1, 4, -4; got {0}")]
    UnsupportedN(i64),
    #[error("({x}, {y}) does not solve x^2 - {d}y^2 = {n}")]
    NotASolution { x: BigUint, y: BigUint, d: BigUint, n: i32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("c does not divide ab (a={a}, b={b}, c={c})")]
    DivisibilityViolation { a: u64, b: u64, c: u64 },
    #[error("exponents must satisfy k >= m and l >= m (k={k}, l={l}, m={m})")]
    ExponentViolation { k: u32, l: u32, m: u32 },
    #[error("d = {0} is a perfect square")]
    SquareD(BigUint),
    #[error("d = {0} is not positive enough (need d >= 2)")]
    NonpositiveD(BigInt),
    #[error("closed-form pattern does not apply: {0}")]
    PatternInapplicable(String),
    #[error("form has discriminant {0}; an indefinite non-square discriminant is required")]
    NotIndefinite(BigInt),
    #[error("matrix determinant is {0}; expected +1 or -1")]
    NotUnimodular(BigInt),
    #[error("outer coefficient c is zero")]
    ZeroOuterCoefficient,
    #[error("form ({0}, {1}, {2}) is not reduced")]
    NotReduced(BigInt, BigInt, BigInt),
    #[error("cycle did not close within {limit} steps")]
    CycleLimit { limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
