//! Quadratic product sets `A_k = {r(k - r) : 1 <= r <= k - 1}` and their
//! pairwise intersections.
//!
//! A value common to `A_n` and `A_m` (`n < m`) corresponds to a factor pair
//! `(M, N)` of `m^2 - n^2`, so intersections can be read off the divisors of
//! `(m - n)(m + n)` instead of enumerating both sets. This crate provides:
//!
//! - [`numtheory`]: factorization, divisor counting and factor pairs.
//! - [`productset`]: `A_k` itself and the brute-force intersection oracle.
//! - [`tpairs`]: admissible factor pairs, the fast intersection and the
//!   bound/equality report.
//! - [`family`]: explicit `(n, m)` pairs whose intersection has exactly `s`
//!   elements.
//! - [`sumproduct`]: sum classes, product classes and the hypergraph covering
//!   bound used in sum-product accounting.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![warn(missing_docs)]

extern crate alloc;

mod error;
pub mod family;
pub mod numtheory;
pub mod productset;
pub mod sumproduct;
pub mod tpairs;

pub use error::Error;

/// Largest supported `m`; keeps `m^2` (and every factor pair of
/// `m^2 - n^2`) inside `u64`.
pub const MAX_INDEX: u64 = 1 << 31;

/// Convenience alias used throughout the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;
