use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be positive (r = {r}, n = {n})")]
    ZeroDegree { r: u32, n: u32 },
    #[error("field of order {order} exceeds the ceiling {ceiling}")]
    FieldTooLarge { order: u128, ceiling: u64 },
    #[error("log tables requested for a field of order {order}, above the table budget {budget}")]
    TablesOverBudget { order: u64, budget: u64 },
    #[error("modulus must be monic of degree {expected}, got {got:?}")]
    BadModulus { expected: u32, got: Vec<u64> },
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u64>),
    #[error("encoding {value} is not an element of a field of order {order}")]
    BadEncoding { value: u64, order: u64 },
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("operands belong to different field towers")]
    CrossTower,
    #[error("{d} does not divide the absolute degree {degree}")]
    NotADivisor { d: u32, degree: u32 },
    #[error("the 2-adic valuation is undefined at 0; gcd_power needs i >= 1 and j >= 1")]
    GcdExponentZero,
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("gcd({s}, {n}) != 1 or s outside 1..n")]
    NotCoprime { s: u32, n: u32 },
    #[error("theta must satisfy N(theta) not in {{0, 1}}")]
    InvalidTheta,
    #[error("s = {s} is not normalized (need 1 <= s < n/2 with n = {n})")]
    Unnormalized { s: u32, n: u32 },
    #[error("operation requires {0}")]
    Precondition(&'static str),
    #[error("a value-multiset count {count} is not of the form q^w - 1 (q = {q})")]
    BadWeight { count: u64, q: u64 },
    #[error("brute-force search over a field of order {order} exceeds the ceiling {ceiling}")]
    CeilingExceeded { order: u64, ceiling: u64 },
    #[error("automorphism group has {got} elements, the size formula predicts {expected}")]
    AutSizeMismatch { expected: u64, got: u64 },
    #[error("machine check rejected {0}")]
    CheckFailed(String),
    #[error("q = 2 admits no valid LP parameter")]
    QIsTwo,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T, E = LpError> = std::result::Result<T, E>;
