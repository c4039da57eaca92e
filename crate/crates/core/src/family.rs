//! Pairs `(n, m)` whose product sets share exactly `s` elements.
//!
//! Take an odd prime `p`, an exponent `alpha` with `2^alpha > p^s`, and
//! `m = 2^alpha p^s + 1`, `n = m - 2`. Then `m^2 - n^2 = 2^(alpha+2) p^s`, and
//! the factor pairs `M_i = 2 p^(s-i)`, `N_i = 2^(alpha+1) p^i` for
//! `0 <= i < s` are exactly the T-pairs that map to solutions. The `i = s`
//! pair has `M + N = 2m` and drops out.

use alloc::vec::Vec;

use crate::numtheory::is_prime;
use crate::productset::intersect_bruteforce;
use crate::tpairs::{enumerate_tpairs, pair_to_kr, TPair};
use crate::{Error, Result, MAX_INDEX};

/// Largest `m` for which construction also cross-checks against
/// [`intersect_bruteforce`].
pub const BRUTE_FORCE_CAP: u64 = 1_000_000;

/// Parameters `(s, p, alpha)` and the derived pair `n = m - 2`,
/// `m = 2^alpha p^s + 1`. Only obtainable through [`construct_pair`], so every
/// value has been validated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FamilySpec {
    s: u32,
    p: u64,
    alpha: u32,
    n: u64,
    m: u64,
}

impl FamilySpec {
    /// Target intersection size.
    pub fn s(&self) -> u32 {
        self.s
    }
    /// Odd prime base.
    pub fn p(&self) -> u64 {
        self.p
    }
    /// Power of two, with `2^alpha > p^s`.
    pub fn alpha(&self) -> u32 {
        self.alpha
    }
    /// `m - 2`.
    pub fn n(&self) -> u64 {
        self.n
    }
    /// `2^alpha p^s + 1`.
    pub fn m(&self) -> u64 {
        self.m
    }
}

/// Smallest `alpha` with `2^alpha > x`.
fn minimal_alpha(x: u64) -> u32 {
    u64::BITS - x.leading_zeros()
}

/// Builds and self-validates the pair for `(s, p, alpha)`. Without `alpha`
/// the smallest admissible exponent is used.
///
/// Validation recomputes the intersection through T-pairs (and by brute
/// force when `m <= BRUTE_FORCE_CAP`) and requires it to have exactly `s`
/// elements, produced by exactly the predicted pairs. A mismatch is reported
/// as [`Error::Falsification`].
pub fn construct_pair(s: u32, p: u64, alpha: Option<u32>) -> Result<FamilySpec> {
    if s == 0 {
        return Err(Error::InvalidParameter { name: "s", value: 0.0, range: "s >= 1" });
    }
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let ps = p.checked_pow(s).ok_or(Error::Overflow("p^s"))?;
    let alpha = match alpha {
        Some(a) if a >= u64::BITS || (1u64 << a) <= ps => {
            return Err(Error::AlphaTooSmall { alpha: a, p, s })
        }
        Some(a) => a,
        None => minimal_alpha(ps),
    };
    let m = 1u64
        .checked_shl(alpha)
        .and_then(|two| two.checked_mul(ps))
        .and_then(|v| v.checked_add(1))
        .ok_or(Error::Overflow("2^alpha p^s + 1"))?;
    if m > MAX_INDEX {
        return Err(Error::TooLarge { what: "m", value: m, max: MAX_INDEX });
    }
    let spec = FamilySpec { s, p, alpha, n: m - 2, m };
    validate(&spec)?;
    Ok(spec)
}

fn validate(spec: &FamilySpec) -> Result<()> {
    let (n, m) = (spec.n, spec.m);
    if u128::from(m).pow(2) - u128::from(n).pow(2) != u128::from(spec.p.pow(spec.s)) << (spec.alpha + 2) {
        return Err(Error::Falsification("m^2 - n^2 != 2^(alpha+2) p^s"));
    }
    let predicted = predicted_pairs(spec);
    let mut producing: Vec<TPair> = enumerate_tpairs(n, m)?
        .into_iter()
        .filter(|t| pair_to_kr(t).is_some())
        .collect();
    let mut expected = predicted.clone();
    producing.sort_unstable();
    expected.sort_unstable();
    if producing != expected {
        return Err(Error::Falsification("defined T-pairs differ from the predicted pairs"));
    }
    let mut values: Vec<u64> = predicted.iter().filter_map(pair_to_kr).map(|x| x.common_value).collect();
    values.sort_unstable();
    values.dedup();
    if values.len() != spec.s as usize {
        return Err(Error::Falsification("predicted pairs do not give s distinct values"));
    }
    if m <= BRUTE_FORCE_CAP && intersect_bruteforce(n, m)? != values {
        return Err(Error::Falsification("brute-force intersection differs from predicted values"));
    }
    Ok(())
}

/// The `s` pairs `(2 p^(s-i), 2^(alpha+1) p^i)` for `i = 0..s`, in order of
/// increasing `i`.
pub fn predicted_pairs(spec: &FamilySpec) -> Vec<TPair> {
    let two_alpha1 = 1u64 << (spec.alpha + 1);
    (0..spec.s)
        .map(|i| TPair {
            n: spec.n,
            m: spec.m,
            lower: 2 * spec.p.pow(spec.s - i),
            upper: two_alpha1 * spec.p.pow(i),
        })
        .collect()
}

/// `count` specs with intersection size `s`, using consecutive odd primes
/// from 3 and minimal exponents, so `m` strictly increases.
pub fn construct_sequence(s: u32, count: usize) -> Result<Vec<FamilySpec>> {
    if count == 0 {
        return Err(Error::InvalidParameter { name: "count", value: 0.0, range: "count >= 1" });
    }
    let mut specs = Vec::with_capacity(count);
    let mut p = 3u64;
    while specs.len() < count {
        if is_prime(p) {
            specs.push(construct_pair(s, p, None)?);
        }
        p += 2;
    }
    Ok(specs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tpairs::intersect_fast;
    use alloc::vec;

    fn spec(s: u32, p: u64, alpha: u32) -> FamilySpec {
        construct_pair(s, p, Some(alpha)).unwrap()
    }

    #[test]
    fn construct_examples() {
        let a = spec(1, 3, 2);
        assert_eq!((a.n(), a.m()), (11, 13));
        assert_eq!(intersect_fast(11, 13).unwrap(), vec![30]);

        let b = spec(2, 3, 4);
        assert_eq!((b.n(), b.m()), (143, 145));
        assert_eq!(145 * 145 - 143 * 143, 576);
        assert_eq!(intersect_bruteforce(143, 145).unwrap(), vec![4606, 5100]);

        assert_eq!(
            construct_pair(1, 3, Some(1)),
            Err(Error::AlphaTooSmall { alpha: 1, p: 3, s: 1 })
        );
    }

    #[test]
    fn minimal_alpha_default() {
        assert_eq!(construct_pair(1, 3, None).unwrap().alpha(), 2);
        assert_eq!(construct_pair(2, 3, None).unwrap().alpha(), 4);
        assert_eq!(construct_pair(3, 3, None).unwrap().alpha(), 5);
        assert_eq!(construct_pair(1, 5, None).unwrap().alpha(), 3);
    }

    #[test]
    fn rejects_bad_base() {
        assert_eq!(construct_pair(1, 4, None), Err(Error::NotOddPrime(4)));
        assert_eq!(construct_pair(1, 2, None), Err(Error::NotOddPrime(2)));
        assert_eq!(construct_pair(1, 9, None), Err(Error::NotOddPrime(9)));
        assert!(construct_pair(0, 3, None).is_err());
        assert!(matches!(construct_pair(1, 3, Some(40)), Err(Error::TooLarge { .. })));
        assert!(construct_pair(1, 3, Some(64)).is_err());
    }

    #[test]
    fn predicted_examples() {
        let tp = |n, m, lower, upper| TPair { n, m, lower, upper };
        assert_eq!(predicted_pairs(&spec(1, 3, 2)), vec![tp(11, 13, 6, 8)]);
        assert_eq!(predicted_pairs(&spec(2, 3, 4)), vec![tp(143, 145, 18, 32), tp(143, 145, 6, 96)]);
        // i = s would be (2, 24): M + N = 2m, and the inversion gives r = 0
        assert!(TPair::new(11, 13, 2, 24).is_none());
        assert_eq!(2 * 13 - 24 - 2, 0);
    }

    #[test]
    fn predicted_values() {
        let kr: Vec<_> = predicted_pairs(&spec(2, 3, 4)).iter().map(|t| pair_to_kr(t).unwrap()).collect();
        assert_eq!((kr[0].k, kr[0].r, kr[0].common_value), (68, 60, 5100));
        assert_eq!((kr[1].k, kr[1].r, kr[1].common_value), (49, 47, 4606));
    }

    #[test]
    fn sequence_examples() {
        let seq = construct_sequence(1, 2).unwrap();
        assert_eq!((seq[0].n(), seq[0].m()), (11, 13));
        assert_eq!((seq[1].p(), seq[1].alpha(), seq[1].n(), seq[1].m()), (5, 3, 39, 41));
        assert_eq!(intersect_bruteforce(39, 41).unwrap().len(), 1);

        let one = construct_sequence(3, 1).unwrap();
        assert_eq!((one[0].p(), one[0].alpha(), one[0].n(), one[0].m()), (3, 5, 863, 865));
        assert_eq!(intersect_bruteforce(863, 865).unwrap().len(), 3);

        let long = construct_sequence(2, 6).unwrap();
        assert!(long.windows(2).all(|w| w[0].p() < w[1].p() && w[0].m() < w[1].n()));
        assert!(construct_sequence(1, 0).is_err());
    }
}
