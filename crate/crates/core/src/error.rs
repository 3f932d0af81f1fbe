use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too small (need a prime >= 5)")]
    TooSmall(u64),
    #[error("modulus {0} exceeds 2^31")]
    TooLarge(u64),
    #[error("intervals overlap at residue {0}")]
    OverlappingIntervals(u64),
    #[error("invalid interval: start {start}, length {length} on Z_{n}")]
    InvalidInterval { start: u64, length: u64, n: u64 },
    #[error("signals live on different moduli ({0} vs {1})")]
    ModulusMismatch(u64, u64),
    #[error("signal has {got} values but the modulus is {expected}")]
    LengthMismatch { expected: u64, got: usize },
    #[error("frequency must be non-zero mod n")]
    ZeroFrequency,
    #[error("quadratic coefficient is 0 mod n")]
    DegenerateQuadratic,
    #[error("progression length {0} unsupported (expected 3, 4 or 5)")]
    InvalidArity(usize),
    #[error("signal is not 0/1-valued at residue {0}")]
    NotIndicator(u64),
    #[error("modulus {0} admits no interval width t with n/1500 <= t <= n/1200")]
    ModulusTooSmall(u64),
    #[error("grid design is invalid: {0} lines violate the one-point rule")]
    InvalidDesign(usize),
    #[error("grid point ({0}, {1}, {2}) is outside {{1,2,3,4}}^3")]
    OutOfDomain(i64, i64, i64),
    #[error("probability {value} at residue {x} is outside [0, 1]")]
    ProbabilityOutOfRange { x: u64, value: f64 },
    #[error("search length {n} exceeds the exhaustive limit {max}")]
    SearchTooLarge { n: usize, max: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("i/o failure on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
