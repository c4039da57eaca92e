//! The product sets `A_k = {r(k - r) : 1 <= r <= k - 1}` and the brute-force
//! intersection oracle.
//!
//! Since `r(k - r) = (k - r) r`, every value is produced by some
//! `r <= floor(k / 2)`, and on that range `r -> r(k - r)` is strictly
//! increasing. So `A_k` has exactly `floor(k / 2)` elements, from `k - 1` up
//! to `floor(k^2 / 4)`, and enumerating `r = 1, 2, ...` yields them sorted.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::numtheory::exact_sqrt;
use crate::{Error, Result, MAX_INDEX};

/// Default cap on the number of elements [`product_set`] will materialize.
pub const DEFAULT_MATERIALIZE_CAP: u64 = 10_000_000;

/// `A_k` with its values in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ProductSet {
    k: u64,
    values: Vec<u64>,
}

impl ProductSet {
    /// Materializes `A_k`, refusing when it would hold more than `cap`
    /// elements. Use [`is_member`] for larger `k`.
    pub fn with_cap(k: u64, cap: u64) -> Result<Self> {
        check_index(k)?;
        if k / 2 > cap {
            return Err(Error::TooLarge { what: "|A_k|", value: k / 2, max: cap });
        }
        let values: Vec<u64> = values_iter(k).collect();
        debug_assert!(values.windows(2).all(|w| w[0] < w[1]));
        Ok(Self { k, values })
    }

    /// The index `k`.
    pub fn k(&self) -> u64 {
        self.k
    }

    /// Sorted distinct elements.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `|A_k| = floor(k / 2)`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; `A_k` is nonempty for `k >= 2`.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Membership by binary search.
    pub fn contains(&self, v: u64) -> bool {
        self.values.binary_search(&v).is_ok()
    }
}

/// Materializes `A_k` under [`DEFAULT_MATERIALIZE_CAP`].
pub fn product_set(k: u64) -> Result<ProductSet> {
    ProductSet::with_cap(k, DEFAULT_MATERIALIZE_CAP)
}

/// Lazily yields `A_k` in increasing order. `k` is not validated.
pub fn values_iter(k: u64) -> impl Iterator<Item = u64> + Clone {
    (1..=k / 2).map(move |r| r * (k - r))
}

/// Whether `v = r(k - r)` for some `1 <= r <= k - 1`, without materializing
/// `A_k`: `r = (k - sqrt(k^2 - 4v)) / 2` must be a positive integer.
pub fn is_member(k: u64, v: u64) -> bool {
    if k < 2 || v == 0 {
        return false;
    }
    let k2 = u128::from(k) * u128::from(k);
    let four_v = 4 * u128::from(v);
    if four_v > k2 {
        return false;
    }
    let Ok(disc) = u64::try_from(k2 - four_v) else {
        return false;
    };
    match exact_sqrt(disc) {
        Some(root) => root + 2 <= k && (k - root).is_multiple_of(2),
        None => false,
    }
}

/// Checks `2 <= k <= MAX_INDEX`.
pub fn check_index(k: u64) -> Result<()> {
    if k < 2 {
        return Err(Error::IndexTooSmall(k));
    }
    if k > MAX_INDEX {
        return Err(Error::TooLarge { what: "k", value: k, max: MAX_INDEX });
    }
    Ok(())
}

/// Checks `2 <= n < m <= MAX_INDEX`.
pub fn check_pair(n: u64, m: u64) -> Result<()> {
    if n < 2 || n >= m {
        return Err(Error::BadPair { n, m });
    }
    if m > MAX_INDEX {
        return Err(Error::TooLarge { what: "m", value: m, max: MAX_INDEX });
    }
    Ok(())
}

/// Merge-intersection of two strictly increasing sequences.
pub fn intersect_sorted<A, B>(a: A, b: B) -> Vec<u64>
where
    A: IntoIterator<Item = u64>,
    B: IntoIterator<Item = u64>,
{
    let mut out = Vec::new();
    let (mut a, mut b) = (a.into_iter(), b.into_iter());
    let (mut x, mut y) = (a.next(), b.next());
    while let (Some(u), Some(v)) = (x, y) {
        match u.cmp(&v) {
            Ordering::Less => x = a.next(),
            Ordering::Greater => y = b.next(),
            Ordering::Equal => {
                out.push(u);
                x = a.next();
                y = b.next();
            }
        }
    }
    out
}

/// `A_n ∩ A_m` by enumerating both sets, sorted ascending.
///
/// This is the reference every faster path is checked against. Runs in
/// `O(n + m)` time with constant extra memory beyond the output.
pub fn intersect_bruteforce(n: u64, m: u64) -> Result<Vec<u64>> {
    check_pair(n, m)?;
    // A_m starts at m - 1 and A_n ends at floor(n^2 / 4)
    let lo = m - 1;
    let small = values_iter(n).skip_while(|&v| v < lo);
    Ok(intersect_sorted(small, values_iter(m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn examples() {
        assert_eq!(product_set(2).unwrap().values(), &[1]);
        assert_eq!(product_set(6).unwrap().values(), &[5, 8, 9]);
        assert_eq!(product_set(13).unwrap().values(), &[12, 22, 30, 36, 40, 42]);
        assert_eq!(product_set(1), Err(Error::IndexTooSmall(1)));
        assert_eq!(product_set(0), Err(Error::IndexTooSmall(0)));
    }

    #[test]
    fn materialize_cap() {
        assert!(ProductSet::with_cap(20, 10).is_ok());
        assert!(matches!(ProductSet::with_cap(22, 10), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(intersect_bruteforce(5, 6).unwrap(), vec![]);
        assert_eq!(intersect_bruteforce(6, 9).unwrap(), vec![8]);
        assert_eq!(intersect_bruteforce(11, 13).unwrap(), vec![30]);
        assert_eq!(intersect_bruteforce(13, 11), Err(Error::BadPair { n: 13, m: 11 }));
        assert_eq!(intersect_bruteforce(1, 5), Err(Error::BadPair { n: 1, m: 5 }));
        assert_eq!(intersect_bruteforce(7, 7), Err(Error::BadPair { n: 7, m: 7 }));
    }

    #[test]
    fn shape_invariants() {
        for k in 2..=2_000u64 {
            let a = product_set(k).unwrap();
            assert_eq!(a.len() as u64, k / 2);
            assert_eq!(a.values()[0], k - 1);
            assert_eq!(*a.values().last().unwrap(), k * k / 4);
            assert!(a.values().windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn full_range_enumeration_agrees() {
        for k in 2..=300u64 {
            let mut all: Vec<u64> = (1..k).map(|r| r * (k - r)).collect();
            all.sort_unstable();
            all.dedup();
            assert_eq!(product_set(k).unwrap().values(), &all[..], "k = {k}");
        }
    }

    #[test]
    fn discriminant_membership() {
        for k in 2..=200u64 {
            let a = product_set(k).unwrap();
            for v in 0..=k * k / 4 + 3 {
                assert_eq!(is_member(k, v), a.contains(v), "k = {k}, v = {v}");
            }
        }
        let k = MAX_INDEX;
        assert!(is_member(k, 17 * (k - 17)));
        assert!(!is_member(k, 17 * (k - 17) + 1));
    }
}
