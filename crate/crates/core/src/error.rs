use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("form must have between 1 and 4 coefficients, got {0}")]
    BadRank(usize),
    #[error("form coefficients must be positive")]
    ZeroCoefficient,
    #[error("determinant of the form overflows 128 bits")]
    DeterminantOverflow,
    #[error("operation needs a rank 4 form, got rank {0}")]
    RankNotFour(usize),
    #[error("operation needs coefficients with gcd 1, got gcd {0}")]
    ScaleNotOne(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p-adic order of 0 is undefined")]
    ZeroOrder,
    #[error("0 has no square class")]
    ZeroSquareClass,
    #[error("invalid progression {a},{m}: need 0 < a < m")]
    InvalidProgression { a: u64, m: u64 },
    #[error("progression {a},{m} is not admissible at p = {p}: ord_p {a} >= ord_p {m}")]
    Inadmissible { a: u64, m: u64, p: u64 },
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("modulus {0} is too large to materialize residue sets")]
    ModulusTooLarge(u128),
    #[error("bound {bound} exceeds the sieve limit {limit}; lower --bound or split the range")]
    BoundTooLarge { bound: u64, limit: u64 },
    #[error("bound {bound} is too small: {reason}")]
    BoundTooSmall { bound: u64, reason: String },
    #[error("family parameter r = {0} outside 1..=4")]
    FamilyOutOfRange(u32),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
