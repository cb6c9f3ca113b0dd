use alloc::string::String;

use crate::poly::EPolynomial;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("prime {prime} exceeds the enumeration bound {bound}")]
    PrimeAboveBound { prime: u32, bound: u32 },
    #[error("operands live over different primes ({0} and {1})")]
    ModulusMismatch(u32, u32),
    #[error("0 has no inverse modulo {0}")]
    ZeroInverse(u32),
    #[error("entries {entries:?} do not form a determinant-one matrix modulo {prime}")]
    NotInSl2 { entries: [u32; 4], prime: u32 },
    #[error(
        "eigenvalue parameter {lambda} is not admissible modulo {prime} (must avoid 0, 1, -1)"
    )]
    InvalidLambda { lambda: u32, prime: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(
        "oracle out of range: brute force is limited to p <= {limit} for this target (got {prime})"
    )]
    OracleOutOfRange { prime: u32, limit: u32 },
    #[error("need at least {needed} distinct sample points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },
    #[error("duplicate sample point at prime {0}")]
    DuplicatePoint(u64),
    #[error("not polynomial-count at degree {degree}: interpolant has non-integral coefficient at q^{power}")]
    NonIntegralCoefficient { degree: usize, power: usize },
    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),
    #[error("division is not exact; remainder {remainder}")]
    InexactDivision { remainder: EPolynomial },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("polynomial degree {degree} exceeds 2 * dimension = {limit}")]
    DegreeOverflow { degree: usize, limit: usize },
}
