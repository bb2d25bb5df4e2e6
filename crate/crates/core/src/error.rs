use thiserror::Error;

/// Errors raised across the crate. Domain errors mean a precondition was
/// violated; resource errors mean the requested computation does not fit the
/// available tables or budgets.
#[derive(Debug, Error)]
pub enum Error {
    #[error("sieve limit {limit} out of range (need 2 <= limit <= {max})")]
    SieveLimit { limit: u64, max: u64 },

    #[error("cannot allocate sieve with limit {limit}")]
    SieveAlloc { limit: u64 },

    #[error("argument {n} outside table range [1, {limit}]")]
    OutOfRange { n: u64, limit: u64 },

    #[error("sieve table limit {limit} too small, need at least {needed}")]
    TableTooSmall { limit: u64, needed: u64 },

    #[error("{q} is not prime")]
    NotPrime { q: u64 },

    #[error("{m} is not {y}-smooth")]
    NotSmooth { m: u64, y: u64 },

    #[error("smooth enumeration budget of {max_count} values exceeded")]
    SmoothBudget { max_count: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("negative weight in pmf")]
    NegativeWeight,

    #[error("prime set must be nonempty")]
    EmptyPrimeSet,

    #[error("prime sets must be disjoint (prime {q} appears twice)")]
    OverlappingSets { q: u64 },

    #[error("generating-function argument z = {q} is a pole")]
    PgfPole { q: u64 },

    #[error("t = {t} below the statistic's domain (need t > {min_t})")]
    LambdaDomain { t: f64, min_t: f64 },

    #[error("empty evaluation grid")]
    EmptyGrid,

    #[error("partial result only: distance lies in [{lower}, {upper}] (enumeration budget exceeded with incomplete support)")]
    PartialDistance { lower: f64, upper: f64 },

    #[error("sieve cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
