use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("angle {p}/{q} is not in lowest terms")]
    NonCoprime { p: i64, q: i64 },
    #[error("angle is rational at multiplicity {0}: k*theta is an integer")]
    IntegerMultiple(u32),
    #[error("multiplicity {k} exceeds the irrationality horizon {k_max}")]
    HorizonExceeded { k: u32, k_max: u32 },
    #[error("hyperbolic rotation number {n} has the wrong parity for {kind}")]
    BadParity { kind: &'static str, n: i64 },
    #[error("orbit '{0}' appears twice in one orbit set")]
    DuplicateOrbit(String),
    #[error("orbit '{0}' has multiplicity zero")]
    ZeroMultiplicity(String),
    #[error("unknown orbit '{0}'")]
    UnknownOrbit(String),
    #[error("trivialization has no offset for orbit '{0}'")]
    MissingOffset(String),
    #[error("malformed braid word: {0}")]
    MalformedWord(String),
    #[error("staircase region has zero area")]
    DegenerateRegion,
    #[error("inconsistent data: {0}")]
    InconsistentData(String),
    #[error("modulus mismatch: expected {expected}, got {got}")]
    ModulusMismatch { expected: u64, got: u64 },
    #[error("trivializations differ on shared orbit '{0}'")]
    MismatchedTrivializations(String),
    #[error("missing intersection data for pair ({0}, {1})")]
    MissingIntersectionData(String, String),
    #[error("component '{0}' has no positive end")]
    NoPositiveEnd(String),
    #[error("curve is not simple: component '{0}' has degree {1}")]
    NotSimple(String, u32),
    #[error("homology element has {got} coordinates, model has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
