//! Property tests for the core invariants, each against an oracle that does
//! not share code with the path it checks.

use std::collections::{BTreeSet, HashSet};

use prodsets_core::family::{construct_pair, predicted_pairs};
use prodsets_core::numtheory::{divisor_bound, divisor_count, factorize, SpfSieve, Factorizer};
use prodsets_core::productset::{intersect_bruteforce, is_member, product_set};
use prodsets_core::sumproduct::{
    hypergraph_bound, partition_by_sum, product_classes, verify_hypergraph_lemma, Hypergraph,
};
use prodsets_core::tpairs::{enumerate_tpairs, intersect_fast, pair_to_kr, tau, SolutionPair};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Intersection by hashing the full-range enumeration of both sets.
fn hashed_intersection(n: u64, m: u64) -> Vec<u64> {
    let small: HashSet<u64> = (1..n).map(|r| r * (n - r)).collect();
    let mut out: Vec<u64> = (1..m).map(|r| r * (m - r)).filter(|v| small.contains(v)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Solutions of k(n - k) = r(m - r) by double loop.
fn solutions(n: u64, m: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for k in 1..=n / 2 {
        for r in 1..=m / 2 {
            if k * (n - k) == r * (m - r) {
                out.push((k, r));
            }
        }
    }
    out
}

#[test]
fn divisor_count_sieve_oracle_to_one_million() {
    const N: usize = 1_000_000;
    let mut d = vec![0u32; N + 1];
    for i in 1..=N {
        for j in (i..=N).step_by(i) {
            d[j] += 1;
        }
    }
    let sieve = SpfSieve::new(N as u32);
    for x in 1..=N as u64 {
        let f = sieve.factorize(x).unwrap();
        let rebuilt: u64 = f.factors().iter().map(|&(p, e)| p.pow(e)).product();
        assert_eq!(rebuilt, x);
        assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
        assert_eq!(f.divisor_count(), u64::from(d[x as usize]), "x = {x}");
    }
}

#[test]
fn divisor_bound_sanity_scan() {
    let sieve = SpfSieve::new(1_000_000);
    let violations = |eps: f64| -> Vec<u64> {
        (16..=1_000_000u64)
            .filter(|&x| sieve.factorize(x).unwrap().divisor_count() as f64 >= divisor_bound(x, eps).unwrap())
            .collect()
    };
    assert!(violations(1.0).is_empty());
    // highly composite numbers sit above the eps = 0.5 curve at this scale
    let half = violations(0.5);
    assert_eq!(half.len(), 20);
    assert_eq!(half[0], 55_440);
}

#[test]
fn trial_division_matches_sieve_on_large_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let sieve = SpfSieve::new(1 << 16);
    for _ in 0..200 {
        let x: u64 = rng.random_range(1..1u64 << 40);
        let f = factorize(x).unwrap();
        assert_eq!(f.value(), x);
        assert_eq!(sieve.factorize(x).unwrap(), f);
    }
}

#[test]
fn product_set_shape_to_1e5() {
    for k in 2..=100_000u64 {
        let a = product_set(k).unwrap();
        let v = a.values();
        assert_eq!(v.len() as u64, k / 2);
        assert_eq!(v[0], k - 1);
        assert_eq!(*v.last().unwrap(), k * k / 4);
    }
}

#[test]
fn small_grid_against_double_loop() {
    for m in 3..=120u64 {
        for n in 2..m {
            let sols = solutions(n, m);
            let mut values: Vec<u64> = sols.iter().map(|&(k, _)| k * (n - k)).collect();
            values.sort_unstable();
            let fast = intersect_fast(n, m).unwrap();
            assert_eq!(fast, values, "(n, m) = ({n}, {m})");
            assert_eq!(intersect_bruteforce(n, m).unwrap(), values);
            assert_eq!(hashed_intersection(n, m), values);

            // each solution maps to a distinct admissible pair that maps back
            let pairs: BTreeSet<_> = sols
                .iter()
                .map(|&(k, r)| SolutionPair { k, r, common_value: k * (n - k) }.to_tpair(n, m))
                .collect();
            assert_eq!(pairs.len(), sols.len());
            let tps = enumerate_tpairs(n, m).unwrap();
            for p in &pairs {
                assert!(tps.contains(p));
                assert!(pair_to_kr(p).is_some());
            }
        }
    }
}

#[test]
fn mod_four_mechanism_for_even_odd() {
    for m in (4..=600u64).step_by(2) {
        for n in (3..m).step_by(2) {
            for t in enumerate_tpairs(n, m).unwrap() {
                assert_eq!((t.lower * t.upper) % 4, 3);
                assert_eq!((t.lower + t.upper) % 4, 0);
                assert!(pair_to_kr(&t).is_some(), "{t:?}");
            }
        }
    }
}

#[test]
fn family_specs_exact() {
    for s in 1..=4u32 {
        for p in [3u64, 5, 7, 11, 13] {
            let spec = match construct_pair(s, p, None) {
                Ok(spec) => spec,
                Err(e) => panic!("s = {s}, p = {p}: {e}"),
            };
            let (n, m) = (spec.n(), spec.m());
            assert_eq!(
                u128::from(m).pow(2) - u128::from(n).pow(2),
                u128::from(p.pow(s)) << (spec.alpha() + 2)
            );
            let predicted = predicted_pairs(&spec);
            let tps = enumerate_tpairs(n, m).unwrap();
            for t in &predicted {
                assert!(tps.contains(t));
                assert!(t.lower + t.upper < 2 * m && t.lower <= t.upper && t.upper - t.lower < 2 * n);
            }
            let defined = tps.iter().filter(|t| pair_to_kr(t).is_some()).count();
            assert_eq!(defined, s as usize);
            assert_eq!(intersect_fast(n, m).unwrap().len(), s as usize);
            if m <= 1_000_000 {
                assert_eq!(intersect_bruteforce(n, m).unwrap().len(), s as usize);
            }
        }
    }
}

#[test]
fn sum_classes_on_random_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let len = rng.random_range(2..60);
        let mut a: Vec<u64> = (0..len).map(|_| rng.random_range(1..5_000)).collect();
        a.sort_unstable();
        a.dedup();
        if a.len() < 2 {
            continue;
        }
        let part = partition_by_sum(&a).unwrap();
        let total: usize = part.classes().values().map(Vec::len).sum();
        assert_eq!(total, a.len() * a.len());
        let sums: BTreeSet<u64> = a.iter().flat_map(|x| a.iter().map(move |y| x + y)).collect();
        assert_eq!(part.sumset_size(), sums.len());
        let classes = product_classes(&part);
        for (k, b) in part.classes() {
            let c = &classes[k];
            assert_eq!(c.len(), b.len().div_ceil(2));
            assert!(c.iter().all(|&v| is_member(*k, v)));
        }
    }
}

#[test]
fn random_hypergraphs_meet_covering_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut checked = 0;
    while checked < 1000 {
        let universe = rng.random_range(8..60u64);
        let edges: Vec<Vec<u64>> = (0..rng.random_range(1..12))
            .map(|_| {
                let size = rng.random_range(1..=universe as usize / 2);
                let mut e: Vec<u64> = (0..size).map(|_| rng.random_range(0..universe)).collect();
                e.sort_unstable();
                e.dedup();
                e
            })
            .collect();
        let h = Hypergraph::from_edges(edges).unwrap();
        assert!(verify_hypergraph_lemma(&h), "{h:?}");
        let bound = hypergraph_bound(h.edges().len() as u64, h.min_edge_size(), h.pairwise_cap()).unwrap();
        assert!(h.vertices().len() as f64 >= bound - 1e-9);
        checked += 1;
    }
}

proptest! {
    #[test]
    fn fast_equals_brute(n in 2u64..5_000, gap in 1u64..5_000) {
        let m = n + gap;
        prop_assert_eq!(intersect_fast(n, m).unwrap(), intersect_bruteforce(n, m).unwrap());
    }

    #[test]
    fn tau_bounds(n in 2u64..100_000, gap in 1u64..100_000) {
        let m = n + gap;
        let size = intersect_fast(n, m).unwrap().len() as u64;
        let t = tau(n, m).unwrap();
        prop_assert!(size <= t);
        prop_assert!(t <= divisor_count(m * m - n * n).unwrap());
        if m % 2 == 0 && n % 2 == 1 {
            prop_assert_eq!(size, t);
        }
    }

    #[test]
    fn factorization_round_trip(x in 1u64..1u64 << 44) {
        let f = factorize(x).unwrap();
        let rebuilt = f.factors().iter().fold(1u128, |acc, &(p, e)| acc * u128::from(p).pow(e));
        prop_assert_eq!(rebuilt, u128::from(x));
        prop_assert_eq!(f.factors().is_empty(), x == 1);
    }

    #[test]
    fn large_pairs_agree_with_membership(n in 1_000u64..(1 << 31) - 1, gap in 1u64..1_000) {
        let m = (n + gap).min(1 << 31);
        prop_assume!(n < m);
        for v in intersect_fast(n, m).unwrap() {
            prop_assert!(is_member(n, v) && is_member(m, v));
        }
    }
}
