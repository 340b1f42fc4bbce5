use thiserror::Error;

/// Errors produced by the generators, the oracle and the statistics harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,

    #[error("modulus {q} is out of range (need {min} <= q <= 2^63 - 1)")]
    InvalidModulus { q: u64, min: u64 },

    #[error("{a} has no inverse modulo {q}")]
    NoInverse { a: i64, q: u64 },

    #[error("p = {p} is not a unit modulo q = {q}")]
    NotCoprime { p: u64, q: u64 },

    #[error("phase of G(-{p}, {m}, {q}) is undefined: the sum vanishes")]
    PhaseUndefined { p: u64, m: i64, q: u64 },

    #[error("G(-{p}, {m}, {q}) vanished at a successor index; parity-class bookkeeping is wrong")]
    ZeroGaussSum { p: u64, m: i64, q: u64 },

    #[error("modulus {q} is not an odd prime, twice an odd prime, or a power of two >= 4")]
    UnsupportedModulus { q: u64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("geometry mismatch between operands")]
    GeometryMismatch,

    #[error("empty input")]
    EmptyInput,

    #[error("{what}: need at least {need} samples, got {got}")]
    InsufficientSamples { what: &'static str, need: usize, got: usize },

    #[error("{what}: {got} samples exceed the cap of {cap}")]
    SampleCap { what: &'static str, cap: usize, got: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
