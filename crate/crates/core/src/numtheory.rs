//! Factorization, divisors and the divisor-function bound.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Prime-power decomposition of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// The factorization of 1.
    pub fn one() -> Self {
        Self { value: 1, factors: Vec::new() }
    }

    /// Builds a factorization from `(prime, exponent)` pairs, checking that
    /// primes are strictly increasing, exponents positive and the product
    /// fits in `u64`. Primality of the bases is not rechecked.
    pub fn from_factors(factors: Vec<(u64, u32)>) -> Result<Self> {
        let mut value: u64 = 1;
        let mut last = 1;
        for &(p, e) in &factors {
            if p <= last || e == 0 {
                return Err(Error::MalformedFactors);
            }
            last = p;
            let pe = p.checked_pow(e).ok_or(Error::Overflow("factor product"))?;
            value = value.checked_mul(pe).ok_or(Error::Overflow("factor product"))?;
        }
        Ok(Self { value, factors })
    }

    /// The factored integer.
    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// `d(x)`, the number of positive divisors.
    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| u64::from(e) + 1).product()
    }

    /// All positive divisors in ascending order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    /// Pairs `(M, N)` with `M * N = value` and `M <= N`, ascending in `M`.
    pub fn divisor_pairs(&self) -> Vec<(u64, u64)> {
        let divs = self.divisors();
        let half = divs.len().div_ceil(2);
        divs[..half].iter().map(|&d| (d, self.value / d)).collect()
    }

    /// Factorization of `self * other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        let value = self
            .value
            .checked_mul(other.value)
            .ok_or(Error::Overflow("factorization product"))?;
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut a, mut b) = (self.factors.iter().peekable(), other.factors.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(p, e)), Some(&&(q, f))) => {
                    if p == q {
                        factors.push((p, e + f));
                        a.next();
                        b.next();
                    } else if p < q {
                        factors.push((p, e));
                        a.next();
                    } else {
                        factors.push((q, f));
                        b.next();
                    }
                }
                (Some(&&pe), None) => {
                    factors.push(pe);
                    a.next();
                }
                (None, Some(&&qf)) => {
                    factors.push(qf);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Ok(Self { value, factors })
    }
}

/// Source of prime factorizations.
pub trait Factorizer {
    /// Factorizes `x >= 1`.
    fn factorize(&self, x: u64) -> Result<Factorization>;
}

/// Plain trial division up to `sqrt(x)`, skipping multiples of 2 and 3.
#[derive(Debug, Clone, Copy, Default)]
pub struct TrialDivision;

impl Factorizer for TrialDivision {
    fn factorize(&self, x: u64) -> Result<Factorization> {
        if x == 0 {
            return Err(Error::Zero);
        }
        let mut rest = x;
        let mut factors = Vec::new();
        let mut take = |d: u64, rest: &mut u64| {
            if (*rest).is_multiple_of(d) {
                let mut e = 0;
                while (*rest).is_multiple_of(d) {
                    *rest /= d;
                    e += 1;
                }
                factors.push((d, e));
            }
        };
        take(2, &mut rest);
        take(3, &mut rest);
        // candidates 6j - 1 and 6j + 1
        let mut d = 5u64;
        while d <= rest / d {
            take(d, &mut rest);
            take(d + 2, &mut rest);
            d += 6;
        }
        if rest > 1 {
            factors.push((rest, 1));
        }
        Ok(Factorization { value: x, factors })
    }
}

/// Smallest-prime-factor table for fast batch factorization below a limit.
///
/// Values above the limit fall back to [`TrialDivision`]. The table is
/// immutable once built and can be shared between threads.
#[derive(Debug, Clone)]
pub struct SpfSieve {
    spf: Vec<u32>,
}

impl SpfSieve {
    /// Sieve covering `1..=limit`. `limit` must fit in `u32`.
    pub fn new(limit: u32) -> Self {
        let len = limit as usize + 1;
        let mut spf = vec![0u32; len];
        for i in 2..len {
            if spf[i] != 0 {
                continue;
            }
            spf[i] = i as u32;
            let mut j = i * i;
            while j < len {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
        Self { spf }
    }

    /// Largest value factored by table lookup.
    pub fn limit(&self) -> u64 {
        self.spf.len() as u64 - 1
    }
}

impl Factorizer for SpfSieve {
    fn factorize(&self, x: u64) -> Result<Factorization> {
        if x == 0 {
            return Err(Error::Zero);
        }
        if x > self.limit() {
            return TrialDivision.factorize(x);
        }
        let mut rest = x as usize;
        let mut factors: Vec<(u64, u32)> = Vec::new();
        while rest > 1 {
            let p = self.spf[rest] as usize;
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p as u64, e));
        }
        Ok(Factorization { value: x, factors })
    }
}

/// Factorizes `x` by trial division.
pub fn factorize(x: u64) -> Result<Factorization> {
    TrialDivision.factorize(x)
}

/// Number of positive divisors of `x`.
pub fn divisor_count(x: u64) -> Result<u64> {
    Ok(factorize(x)?.divisor_count())
}

/// All `(M, N)` with `M * N = x`, `M <= N`, ascending in `M`.
pub fn divisor_pairs(x: u64) -> Result<Vec<(u64, u64)>> {
    Ok(factorize(x)?.divisor_pairs())
}

/// Factorization of `m^2 - n^2`, obtained from `m - n` and `m + n` so that
/// neither factorization has to handle more than 32-bit operands.
pub fn factorize_difference_of_squares<F: Factorizer + ?Sized>(
    factorizer: &F,
    n: u64,
    m: u64,
) -> Result<Factorization> {
    let lo = factorizer.factorize(m - n)?;
    let hi = factorizer.factorize(m + n)?;
    lo.multiply(&hi)
}

/// `x^((1 + epsilon) ln 2 / ln ln x)`, the upper bound for `d(x)` that holds
/// for all sufficiently large `x`. Natural logarithms throughout.
pub fn divisor_bound(x: u64, epsilon: f64) -> Result<f64> {
    if x < 16 {
        return Err(Error::DegenerateBound(x));
    }
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidParameter { name: "epsilon", value: epsilon, range: "(0, inf)" });
    }
    let ln_x = libm::log(x as f64);
    let exponent = (1.0 + epsilon) * core::f64::consts::LN_2 / libm::log(ln_x);
    Ok(libm::exp(ln_x * exponent))
}

/// Deterministic primality test by trial division.
pub fn is_prime(x: u64) -> bool {
    x >= 2 && factorize(x).is_ok_and(|f| f.factors() == [(x, 1)])
}

/// Returns `Some(s)` when `x = s^2`.
pub fn exact_sqrt(x: u64) -> Option<u64> {
    let s = x.isqrt();
    (s * s == x).then_some(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    // independent of the factorization path
    fn count_divisors_loop(x: u64) -> u64 {
        let mut c = 0;
        let mut d = 1;
        while d * d <= x {
            if x.is_multiple_of(d) {
                c += if d * d == x { 1 } else { 2 };
            }
            d += 1;
        }
        c
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(48).unwrap().factors(), &[(2, 4), (3, 1)]);
        assert_eq!(factorize(576).unwrap().factors(), &[(2, 6), (3, 2)]);
        assert_eq!(factorize(0), Err(Error::Zero));
    }

    #[test]
    fn large_prime_and_semiprime() {
        let p = 4_294_967_291u64; // largest prime below 2^32
        assert_eq!(factorize(p).unwrap().factors(), &[(p, 1)]);
        let f = factorize(65_521 * 65_519).unwrap();
        assert_eq!(f.factors(), &[(65_519, 1), (65_521, 1)]);
    }

    #[test]
    fn divisor_count_examples() {
        assert_eq!(divisor_count(1).unwrap(), 1);
        assert_eq!(divisor_count(48).unwrap(), 10);
        assert_eq!(divisor_count(1_000_000).unwrap(), 49);
    }

    #[test]
    fn divisor_pairs_examples() {
        assert_eq!(divisor_pairs(1).unwrap(), vec![(1, 1)]);
        assert_eq!(divisor_pairs(48).unwrap(), vec![(1, 48), (2, 24), (3, 16), (4, 12), (6, 8)]);
        assert_eq!(divisor_pairs(45).unwrap(), vec![(1, 45), (3, 15), (5, 9)]);
        assert_eq!(divisor_pairs(36).unwrap().last(), Some(&(6, 6)));
    }

    #[test]
    fn divisor_bound_examples() {
        let b = divisor_bound(1_000_000, 0.5).unwrap();
        assert!((b - 237.5).abs() < 0.1, "{b}");
        assert!(divisor_count(1_000_000).unwrap() as f64 <= b);
        // ln ln 16 = 1.0198..., so the exponent is 2 ln 2 / 1.0198 = 1.3594
        let b16 = divisor_bound(16, 1.0).unwrap();
        assert!((b16 - 43.3396).abs() < 1e-3, "{b16}");
        assert!(divisor_bound(48, 1.0).unwrap() >= 10.0);
        assert_eq!(divisor_bound(15, 1.0), Err(Error::DegenerateBound(15)));
        assert!(divisor_bound(100, 0.0).is_err());
    }

    #[test]
    fn sieve_matches_trial_division() {
        let sieve = SpfSieve::new(20_000);
        for x in 1..=20_000u64 {
            assert_eq!(sieve.factorize(x).unwrap(), factorize(x).unwrap(), "x = {x}");
        }
        // above the table
        assert_eq!(sieve.factorize(20_011 * 3).unwrap().factors(), &[(3, 1), (20_011, 1)]);
    }

    #[test]
    fn divisor_count_matches_loop_oracle() {
        for x in 1..=5_000u64 {
            assert_eq!(divisor_count(x).unwrap(), count_divisors_loop(x), "x = {x}");
        }
    }

    #[test]
    fn difference_of_squares() {
        let f = factorize_difference_of_squares(&TrialDivision, 11, 13).unwrap();
        assert_eq!(f.value(), 48);
        assert_eq!(f.factors(), &[(2, 4), (3, 1)]);
        let m = crate::MAX_INDEX;
        let f = factorize_difference_of_squares(&TrialDivision, m - 1, m).unwrap();
        assert_eq!(f.value(), 2 * m - 1);
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&x| is_prime(x)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(!is_prime(4_294_967_291 * 3));
    }

    #[test]
    fn from_factors_validates() {
        assert_eq!(Factorization::from_factors(vec![(2, 3), (5, 1)]).unwrap().value(), 40);
        assert!(Factorization::from_factors(vec![(5, 1), (2, 1)]).is_err());
        assert!(Factorization::from_factors(vec![(2, 0)]).is_err());
    }
}
