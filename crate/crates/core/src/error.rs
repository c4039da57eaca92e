use thiserror::Error;

/// Errors reported by the library.
///
/// Everything except [`Error::Falsification`] is a rejected input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Zero passed where a positive integer is required.
    #[error("expected a positive integer, got 0")]
    Zero,
    /// Product set index below 2.
    #[error("product set index must be at least 2, got {0}")]
    IndexTooSmall(u64),
    /// A pair `(n, m)` that does not satisfy `2 <= n < m`.
    #[error("expected 2 <= n < m, got n = {n}, m = {m}")]
    BadPair {
        /// Smaller index.
        n: u64,
        /// Larger index.
        m: u64,
    },
    /// Value above the supported integer width.
    #[error("{what} = {value} exceeds the supported maximum {max}")]
    TooLarge {
        /// Which quantity overflowed.
        what: &'static str,
        /// Offending value.
        value: u64,
        /// Largest accepted value.
        max: u64,
    },
    /// Arithmetic overflow while deriving a parameter.
    #[error("overflow while computing {0}")]
    Overflow(&'static str),
    /// The divisor bound is only defined for `x >= 16`.
    #[error("divisor bound needs x >= 16, got {0}")]
    DegenerateBound(u64),
    /// A real parameter outside its admissible range.
    #[error("parameter {name} = {value} is out of range ({range})")]
    InvalidParameter {
        /// Parameter name.
        name: &'static str,
        /// Offending value.
        value: f64,
        /// Human readable range.
        range: &'static str,
    },
    /// Family base that is not an odd prime.
    #[error("p must be an odd prime, got {0}")]
    NotOddPrime(u64),
    /// Family exponent violating `2^alpha > p^s`.
    #[error("alpha = {alpha} does not satisfy 2^alpha > p^s for p = {p}, s = {s}")]
    AlphaTooSmall {
        /// Requested exponent.
        alpha: u32,
        /// Odd prime.
        p: u64,
        /// Target intersection size.
        s: u32,
    },
    /// Input set too small.
    #[error("input set needs at least {min} elements, got {len}")]
    SetTooSmall {
        /// Actual size.
        len: usize,
        /// Required size.
        min: usize,
    },
    /// Input set not sorted, not distinct, or containing 0.
    #[error("input set must be strictly increasing positive integers (offending value {0})")]
    MalformedSet(u64),
    /// Factor list with non-increasing primes or a zero exponent.
    #[error("factor list must have strictly increasing primes and positive exponents")]
    MalformedFactors,
    /// Hypergraph that does not satisfy its own premises.
    #[error("hypergraph premise violated: {0}")]
    HypergraphPremise(&'static str),
    /// A proved statement failed on concrete data; indicates a bug.
    #[error("falsification: {0}")]
    Falsification(&'static str),
}
