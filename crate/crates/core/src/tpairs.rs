//! Admissible factor pairs of `m^2 - n^2` and the fast intersection.
//!
//! For `1 <= k <= n/2` and `1 <= r <= m/2`, the equation
//! `k(n - k) = r(m - r)` is equivalent to
//!
//! ```text
//! (m - 2r + n - 2k)(m - 2r - n + 2k) = m^2 - n^2.
//! ```
//!
//! Writing `M = m - 2r - (n - 2k)` and `N = m - 2r + (n - 2k)` gives a factor
//! pair with `M + N < 2m` and `0 < M <= N < M + 2n` (a *T-pair*), and
//! conversely `r = (2m - M - N) / 4`, `k = (2n + M - N) / 4` whenever both are
//! integers. Distinct solutions give distinct T-pairs, so the number of
//! T-pairs `tau(n, m)` bounds `|A_n ∩ A_m|`; when `m` is even and `n` is odd,
//! `M N ≡ -1 (mod 4)` forces `M + N ≡ 0 (mod 4)` and the bound is attained.

use alloc::vec::Vec;

use crate::numtheory::{factorize_difference_of_squares, Factorization, Factorizer, TrialDivision};
use crate::productset::{check_pair, intersect_bruteforce};
use crate::Result;

/// A factor pair `(M, N)` of `m^2 - n^2` with `M + N < 2m` and
/// `0 < M <= N < M + 2n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TPair {
    /// Smaller index.
    pub n: u64,
    /// Larger index.
    pub m: u64,
    /// `M`, the smaller factor.
    #[cfg_attr(feature = "serde", serde(rename = "M"))]
    pub lower: u64,
    /// `N`, the larger factor.
    #[cfg_attr(feature = "serde", serde(rename = "N"))]
    pub upper: u64,
}

impl TPair {
    /// Whether `(lower, upper)` is admissible for `(n, m)`.
    pub fn is_admissible(n: u64, m: u64, lower: u64, upper: u64) -> bool {
        if check_pair(n, m).is_err() || lower == 0 || lower > upper {
            return false;
        }
        let diff = (m - n) as u128 * (m + n) as u128;
        lower as u128 * upper as u128 == diff && lower + upper < 2 * m && upper < lower + 2 * n
    }

    /// Checked constructor.
    pub fn new(n: u64, m: u64, lower: u64, upper: u64) -> Option<Self> {
        Self::is_admissible(n, m, lower, upper).then_some(Self { n, m, lower, upper })
    }
}

/// Integers `k`, `r` with `k(n - k) = r(m - r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SolutionPair {
    /// In `1..=n/2`.
    pub k: u64,
    /// In `1..=m/2`.
    pub r: u64,
    /// `k(n - k) = r(m - r)`.
    pub common_value: u64,
}

impl SolutionPair {
    /// The T-pair this solution corresponds to: `m - 2r ∓ (n - 2k)`.
    pub fn to_tpair(&self, n: u64, m: u64) -> TPair {
        let (base, offset) = (m - 2 * self.r, n - 2 * self.k);
        TPair { n, m, lower: base - offset, upper: base + offset }
    }
}

/// Bound and equality check for a single `(n, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundReport {
    /// Smaller index.
    pub n: u64,
    /// Larger index.
    pub m: u64,
    /// `|A_n ∩ A_m|`, by brute force.
    pub intersection_size: u64,
    /// Number of T-pairs.
    pub tau: u64,
    /// `m` even and `n` odd.
    pub equality_expected: bool,
    /// `intersection_size <= tau`.
    pub inequality_holds: bool,
    /// `intersection_size == tau`.
    pub equality_holds: bool,
}

/// Everything derivable from one factorization of `m^2 - n^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairAnalysis {
    /// Admissible factor pairs, ascending in `M`.
    pub tpairs: Vec<TPair>,
    /// Common values, ascending.
    pub intersection: Vec<u64>,
    /// `d(m^2 - n^2)`.
    pub divisor_count: u64,
}

fn tpairs_from(n: u64, m: u64, diff: &Factorization) -> Vec<TPair> {
    diff.divisor_pairs()
        .into_iter()
        .filter(|&(lower, upper)| lower + upper < 2 * m && upper < lower + 2 * n)
        .map(|(lower, upper)| TPair { n, m, lower, upper })
        .collect()
}

fn intersection_from(tpairs: &[TPair]) -> Vec<u64> {
    let mut values: Vec<u64> = tpairs.iter().filter_map(pair_to_kr).map(|s| s.common_value).collect();
    values.sort_unstable();
    debug_assert!(values.windows(2).all(|w| w[0] < w[1]), "distinct T-pairs gave equal values");
    values
}

/// T-pairs of `(n, m)` using the given factorizer for `m - n` and `m + n`.
pub fn enumerate_tpairs_with<F: Factorizer + ?Sized>(f: &F, n: u64, m: u64) -> Result<Vec<TPair>> {
    check_pair(n, m)?;
    let diff = factorize_difference_of_squares(f, n, m)?;
    Ok(tpairs_from(n, m, &diff))
}

/// T-pairs of `(n, m)`, ascending in `M`.
pub fn enumerate_tpairs(n: u64, m: u64) -> Result<Vec<TPair>> {
    enumerate_tpairs_with(&TrialDivision, n, m)
}

/// `tau(n, m)`, the number of T-pairs.
pub fn tau(n: u64, m: u64) -> Result<u64> {
    Ok(enumerate_tpairs(n, m)?.len() as u64)
}

/// Maps a T-pair back to `(k, r)`; `None` when `2m - M - N` or
/// `2n + M - N` is not divisible by 4, or the result falls outside
/// `1..=n/2` × `1..=m/2`.
pub fn pair_to_kr(pair: &TPair) -> Option<SolutionPair> {
    let &TPair { n, m, lower, upper } = pair;
    if lower + upper >= 2 * m || upper >= lower + 2 * n {
        return None;
    }
    let r4 = 2 * m - upper - lower;
    let k4 = 2 * n + lower - upper;
    if r4 % 4 != 0 || k4 % 4 != 0 {
        return None;
    }
    let (k, r) = (k4 / 4, r4 / 4);
    if !(1..=n / 2).contains(&k) || !(1..=m / 2).contains(&r) {
        return None;
    }
    let common_value = k * (n - k);
    assert_eq!(common_value, r * (m - r), "T-pair mapped to a non-solution");
    Some(SolutionPair { k, r, common_value })
}

/// T-pairs, intersection and `d(m^2 - n^2)` from a single factorization.
pub fn analyze_pair_with<F: Factorizer + ?Sized>(f: &F, n: u64, m: u64) -> Result<PairAnalysis> {
    check_pair(n, m)?;
    let diff = factorize_difference_of_squares(f, n, m)?;
    let tpairs = tpairs_from(n, m, &diff);
    let intersection = intersection_from(&tpairs);
    Ok(PairAnalysis { tpairs, intersection, divisor_count: diff.divisor_count() })
}

/// `A_n ∩ A_m` via T-pairs, using the given factorizer.
pub fn intersect_fast_with<F: Factorizer + ?Sized>(f: &F, n: u64, m: u64) -> Result<Vec<u64>> {
    Ok(intersection_from(&enumerate_tpairs_with(f, n, m)?))
}

/// `A_n ∩ A_m` via T-pairs, sorted ascending. Agrees with
/// [`intersect_bruteforce`] but only costs a factorization of
/// `m - n` and `m + n`.
pub fn intersect_fast(n: u64, m: u64) -> Result<Vec<u64>> {
    intersect_fast_with(&TrialDivision, n, m)
}

/// Compares the brute-force intersection size with `tau(n, m)`.
pub fn verify_bound(n: u64, m: u64) -> Result<BoundReport> {
    let intersection_size = intersect_bruteforce(n, m)?.len() as u64;
    let tau = tau(n, m)?;
    Ok(BoundReport {
        n,
        m,
        intersection_size,
        tau,
        equality_expected: m.is_multiple_of(2) && n % 2 == 1,
        inequality_holds: intersection_size <= tau,
        equality_holds: intersection_size == tau,
    })
}
