use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{x} is not invertible modulo {q}")]
    NotInvertible { x: u64, q: u64 },
    #[error("{a} is not a quadratic residue modulo {p}")]
    NotAResidue { a: u64, p: u64 },
    #[error("{a} is not a unit modulo {p}")]
    NotUnit { a: u64, p: u64 },
    #[error("invalid prime power: {0}")]
    InvalidPrimePower(String),
    #[error("modulus {q} exceeds the brute-force cap {cap}")]
    ModulusTooLarge { q: u64, cap: u64 },
    #[error("sieve limit {limit} exceeds the cap {cap}")]
    LimitTooLarge { limit: u64, cap: u64 },
    #[error("work {work} exceeds the cap {cap}")]
    WorkCapExceeded { work: u64, cap: u64 },
    #[error("bad argument: {0}")]
    BadArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
