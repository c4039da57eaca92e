//! Sum classes, product classes and the hypergraph covering bound.
//!
//! For a finite set `A` of positive integers, `B_k` is the set of ordered
//! pairs of `A × A` with sum `k`, and `C_k` the set of their products. With
//! the sum fixed, the product determines the unordered pair, so
//! `|C_k| = ceil(|B_k| / 2)`, and `C_k ⊆ A_k`. Two product classes can
//! therefore only share elements of `A_k ∩ A_j`, which is what connects the
//! sum-product accounting to the product-set intersections in
//! [`crate::tpairs`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::tpairs::intersect_fast;
use crate::{Error, Result, MAX_INDEX};

/// Largest accepted element; keeps every sum a valid product-set index.
pub const MAX_ELEMENT: u64 = MAX_INDEX / 2;

/// `A × A` split by sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumClassPartition {
    base_set: Vec<u64>,
    classes: BTreeMap<u64, Vec<(u64, u64)>>,
}

impl SumClassPartition {
    /// The set `A`, ascending.
    pub fn base_set(&self) -> &[u64] {
        &self.base_set
    }

    /// `k -> B_k`, over every realized sum `k`.
    pub fn classes(&self) -> &BTreeMap<u64, Vec<(u64, u64)>> {
        &self.classes
    }

    /// `|A + A|`.
    pub fn sumset_size(&self) -> usize {
        self.classes.len()
    }
}

/// A hypergraph together with the two premises of the covering bound: every
/// edge has at least `min_edge_size` vertices and distinct edges share at
/// most `pairwise_cap` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    vertices: BTreeSet<u64>,
    edges: Vec<Vec<u64>>,
    min_edge_size: u64,
    pairwise_cap: u64,
}

impl Hypergraph {
    /// Builds a hypergraph, rejecting it if an edge is smaller than
    /// `min_edge_size` or two edges share more than `pairwise_cap` vertices.
    /// Edges are deduplicated internally; their order is kept.
    pub fn new(edges: Vec<Vec<u64>>, min_edge_size: u64, pairwise_cap: u64) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::HypergraphPremise("no edges"));
        }
        if min_edge_size == 0 {
            return Err(Error::HypergraphPremise("minimum edge size must be positive"));
        }
        let edges: Vec<Vec<u64>> = edges
            .into_iter()
            .map(|mut e| {
                e.sort_unstable();
                e.dedup();
                e
            })
            .collect();
        if edges.iter().any(|e| (e.len() as u64) < min_edge_size) {
            return Err(Error::HypergraphPremise("edge smaller than the minimum edge size"));
        }
        if max_pairwise_intersection(&edges) > pairwise_cap {
            return Err(Error::HypergraphPremise("two edges share more than the pairwise cap"));
        }
        let vertices = edges.iter().flatten().copied().collect();
        Ok(Self { vertices, edges, min_edge_size, pairwise_cap })
    }

    /// Builds a hypergraph whose premises are the tightest ones its edges
    /// satisfy.
    pub fn from_edges(edges: Vec<Vec<u64>>) -> Result<Self> {
        let normalized: Vec<Vec<u64>> = edges
            .into_iter()
            .map(|mut e| {
                e.sort_unstable();
                e.dedup();
                e
            })
            .collect();
        let r = normalized.iter().map(|e| e.len() as u64).min().unwrap_or(0);
        let kappa = max_pairwise_intersection(&normalized);
        Self::new(normalized, r, kappa)
    }

    /// Vertices covered by at least one edge.
    pub fn vertices(&self) -> &BTreeSet<u64> {
        &self.vertices
    }

    /// Edges as sorted vertex lists.
    pub fn edges(&self) -> &[Vec<u64>] {
        &self.edges
    }

    /// Declared minimum edge size `R`.
    pub fn min_edge_size(&self) -> u64 {
        self.min_edge_size
    }

    /// Declared pairwise intersection cap `kappa`.
    pub fn pairwise_cap(&self) -> u64 {
        self.pairwise_cap
    }
}

fn sorted_intersection_len(a: &[u64], b: &[u64]) -> u64 {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

fn max_pairwise_intersection(edges: &[Vec<u64>]) -> u64 {
    let mut best = 0;
    for (i, e) in edges.iter().enumerate() {
        for f in &edges[i + 1..] {
            best = best.max(sorted_intersection_len(e, f));
        }
    }
    best
}

/// The all-sums report for one input set. Quantities that need
/// `ln ln n` are `None` when `n < 16`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SumProductReport {
    /// `n = |A|`.
    pub n_a: usize,
    /// Largest element of `A`.
    pub max_element: u64,
    /// `|A + A|`.
    pub sumset_size: usize,
    /// `|A · A|`.
    pub productset_size: usize,
    /// Exponent parameter in `(0, 1)`.
    pub c: f64,
    /// `n^((ln ln n)^c)`, the element range the conditional statement assumes.
    pub element_range_bound: Option<f64>,
    /// `max(A) <= element_range_bound`.
    pub within_element_range: Option<bool>,
    /// `0.5 n^(2/3 - 2/ln ln n)`; classes strictly above it are heavy.
    pub heavy_threshold: Option<f64>,
    /// `0.5 n^(2/3 - 2/(ln ln n)^(1-c))`, the other exponent variant, for
    /// comparison only.
    pub heavy_threshold_alt: Option<f64>,
    /// Number of heavy sum classes.
    pub heavy_class_count: Option<usize>,
    /// Ordered pairs of `A × A` lying in heavy classes.
    pub heavy_pair_count: Option<u64>,
    /// Smallest `|C_k|` over heavy classes (`R` in the covering bound).
    pub min_heavy_product_class: Option<usize>,
    /// Largest `|C_k ∩ C_j|` over distinct heavy classes (`kappa`).
    pub max_pairwise_product_intersection: Option<usize>,
    /// `n^(2/(ln ln n)^(1-c))`, the predicted cap on `kappa` with implied
    /// constant 1.
    pub intersection_cap: Option<f64>,
    /// Heavy class pairs with nonempty `C_k ∩ C_j`, each checked against
    /// `A_k ∩ A_j`.
    pub cross_checked_pairs: Option<usize>,
    /// Elements of some `C_k ∩ C_j` missing from `A_k ∩ A_j`; always 0
    /// unless something is broken.
    pub cross_check_violations: Option<usize>,
    /// `|∪ C_k|` over heavy classes.
    pub covered_products: Option<usize>,
    /// Covering bound for the hypergraph of heavy product classes.
    pub lemma_bound: Option<f64>,
    /// `covered_products >= lemma_bound`.
    pub lemma_holds: Option<bool>,
    /// `4/3 - 3/(ln ln n)^(1-c)`.
    pub target_exponent: Option<f64>,
    /// `n^target_exponent`.
    pub target_value: Option<f64>,
    /// Constant used in place of the unspecified implied constant.
    pub implied_constant: f64,
    /// `max(|A + A|, |A · A|) >= implied_constant · target_value`.
    /// Informational only.
    pub conclusion_met: Option<bool>,
}

fn check_set(a: &[u64], min: usize) -> Result<()> {
    if a.len() < min {
        return Err(Error::SetTooSmall { len: a.len(), min });
    }
    let mut prev = 0;
    for &x in a {
        if x <= prev {
            return Err(Error::MalformedSet(x));
        }
        prev = x;
    }
    if prev > MAX_ELEMENT {
        return Err(Error::TooLarge { what: "element", value: prev, max: MAX_ELEMENT });
    }
    Ok(())
}

/// Splits `A × A` into the classes `B_k`.
pub fn partition_by_sum(a: &[u64]) -> Result<SumClassPartition> {
    check_set(a, 2)?;
    let mut classes: BTreeMap<u64, Vec<(u64, u64)>> = BTreeMap::new();
    for &x in a {
        for &y in a {
            classes.entry(x + y).or_default().push((x, y));
        }
    }
    Ok(SumClassPartition { base_set: a.to_vec(), classes })
}

fn product_class(pairs: &[(u64, u64)]) -> Vec<u64> {
    let mut c: Vec<u64> = pairs.iter().filter(|(x, y)| x <= y).map(|(x, y)| x * y).collect();
    c.sort_unstable();
    debug_assert!(c.windows(2).all(|w| w[0] < w[1]), "equal products within a sum class");
    c
}

/// `k -> C_k`, the sorted distinct products of each sum class.
pub fn product_classes(partition: &SumClassPartition) -> BTreeMap<u64, Vec<u64>> {
    partition.classes.iter().map(|(&k, pairs)| (k, product_class(pairs))).collect()
}

/// Lower bound `m R^2 / (R + (m - 1) kappa)` on the vertices of a
/// hypergraph with `m` edges of size at least `R` and pairwise
/// intersections at most `kappa`.
pub fn hypergraph_bound(edge_count: u64, min_edge_size: u64, kappa: u64) -> Result<f64> {
    let (num, den) = bound_ratio(edge_count, min_edge_size, kappa)?;
    Ok(num as f64 / den as f64)
}

fn bound_ratio(edge_count: u64, r: u64, kappa: u64) -> Result<(u128, u128)> {
    if edge_count == 0 {
        return Err(Error::InvalidParameter { name: "edge_count", value: 0.0, range: ">= 1" });
    }
    if r == 0 {
        return Err(Error::InvalidParameter { name: "R", value: 0.0, range: ">= 1" });
    }
    let (m, r, kappa) = (u128::from(edge_count), u128::from(r), u128::from(kappa));
    Ok((m * r * r, r + (m - 1) * kappa))
}

/// Whether the covered vertex count meets the covering bound, using the
/// actual minimum edge size and maximum pairwise intersection. Compared in
/// exact integer arithmetic.
pub fn verify_hypergraph_lemma(h: &Hypergraph) -> bool {
    let r = h.edges.iter().map(|e| e.len() as u64).min().unwrap_or(0);
    let kappa = max_pairwise_intersection(&h.edges);
    match bound_ratio(h.edges.len() as u64, r, kappa) {
        Ok((num, den)) => h.vertices.len() as u128 * den >= num,
        Err(_) => false,
    }
}

/// Sum classes whose size is strictly above `threshold`.
pub fn heavy_classes(partition: &SumClassPartition, threshold: f64) -> Vec<u64> {
    partition
        .classes
        .iter()
        .filter(|(_, b)| b.len() as f64 > threshold)
        .map(|(&k, _)| k)
        .collect()
}

/// `C_k ∩ C_j` for every pair `k < j` of the given classes where it is
/// nonempty.
pub fn pairwise_product_intersections(
    classes: &BTreeMap<u64, Vec<u64>>,
    keys: &[u64],
) -> BTreeMap<(u64, u64), Vec<u64>> {
    let mut owners: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &k in keys {
        for &v in &classes[&k] {
            owners.entry(v).or_default().push(k);
        }
    }
    let mut out: BTreeMap<(u64, u64), Vec<u64>> = BTreeMap::new();
    for (v, ks) in owners {
        for (i, &k) in ks.iter().enumerate() {
            for &j in &ks[i + 1..] {
                let key = if k < j { (k, j) } else { (j, k) };
                out.entry(key).or_default().push(v);
            }
        }
    }
    out
}

fn ln_ln(n: usize) -> Option<f64> {
    (n >= 16).then(|| libm::log(libm::log(n as f64)))
}

/// The fields of [`SumProductReport`] that need no logarithms: sizes of
/// `A`, `A + A` and `A · A`. Everything else is `None`. Accepts any
/// nonempty set, which lets callers report on inputs too small for
/// [`conditional_experiment`].
pub fn elementary_report(a: &[u64], c: f64) -> Result<SumProductReport> {
    check_set(a, 1)?;
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::InvalidParameter { name: "c", value: c, range: "(0, 1)" });
    }
    let n = a.len();
    let mut products: Vec<u64> = Vec::with_capacity(n * (n + 1) / 2);
    for (i, &x) in a.iter().enumerate() {
        products.extend(a[i..].iter().map(|&y| x * y));
    }
    products.sort_unstable();
    products.dedup();
    let sums: BTreeSet<u64> = a.iter().enumerate().flat_map(|(i, &x)| a[i..].iter().map(move |&y| x + y)).collect();
    let (sumset_size, productset_size) = (sums.len(), products.len());
    debug_assert!(sumset_size >= 2 * n - 1 && productset_size >= n);
    Ok(SumProductReport {
        n_a: n,
        max_element: *a.last().unwrap_or(&0),
        sumset_size,
        productset_size,
        c,
        element_range_bound: None,
        within_element_range: None,
        heavy_threshold: None,
        heavy_threshold_alt: None,
        heavy_class_count: None,
        heavy_pair_count: None,
        min_heavy_product_class: None,
        max_pairwise_product_intersection: None,
        intersection_cap: None,
        cross_checked_pairs: None,
        cross_check_violations: None,
        covered_products: None,
        lemma_bound: None,
        lemma_holds: None,
        target_exponent: None,
        target_value: None,
        implied_constant: 1.0,
        conclusion_met: None,
    })
}

/// Runs the sum-product accounting on `A` with parameter `c`.
pub fn conditional_experiment(a: &[u64], c: f64) -> Result<SumProductReport> {
    check_set(a, 4)?;
    let mut report = elementary_report(a, c)?;
    let partition = partition_by_sum(a)?;
    let n = a.len();
    let nf = n as f64;
    let (sumset_size, productset_size, max_element) =
        (report.sumset_size, report.productset_size, report.max_element);
    debug_assert_eq!(sumset_size, partition.sumset_size());
    let Some(ll) = ln_ln(n) else {
        return Ok(report);
    };
    let ll_c = libm::pow(ll, 1.0 - c);
    let pow = |e: f64| libm::pow(nf, e);

    let element_range_bound = pow(libm::pow(ll, c));
    report.element_range_bound = Some(element_range_bound);
    report.within_element_range = Some(max_element as f64 <= element_range_bound);
    let threshold = 0.5 * pow(2.0 / 3.0 - 2.0 / ll);
    report.heavy_threshold = Some(threshold);
    report.heavy_threshold_alt = Some(0.5 * pow(2.0 / 3.0 - 2.0 / ll_c));
    report.intersection_cap = Some(pow(2.0 / ll_c));
    let target_exponent = 4.0 / 3.0 - 3.0 / ll_c;
    let target_value = pow(target_exponent);
    report.target_exponent = Some(target_exponent);
    report.target_value = Some(target_value);
    report.conclusion_met =
        Some(sumset_size.max(productset_size) as f64 >= report.implied_constant * target_value);

    let heavy = heavy_classes(&partition, threshold);
    let classes = product_classes(&partition);
    report.heavy_class_count = Some(heavy.len());
    report.heavy_pair_count = Some(heavy.iter().map(|k| partition.classes[k].len() as u64).sum());

    let intersections = pairwise_product_intersections(&classes, &heavy);
    let kappa = intersections.values().map(Vec::len).max().unwrap_or(0);
    report.max_pairwise_product_intersection = Some(kappa);
    let mut violations = 0;
    for (&(k, j), common) in &intersections {
        let allowed = intersect_fast(k, j)?;
        violations += common.iter().filter(|v| allowed.binary_search(v).is_err()).count();
    }
    report.cross_checked_pairs = Some(intersections.len());
    report.cross_check_violations = Some(violations);

    if !heavy.is_empty() {
        let r = heavy.iter().map(|k| classes[k].len()).min().unwrap_or(0);
        let covered: BTreeSet<u64> = heavy.iter().flat_map(|k| classes[k].iter().copied()).collect();
        let bound = hypergraph_bound(heavy.len() as u64, r as u64, kappa as u64)?;
        let (num, den) = bound_ratio(heavy.len() as u64, r as u64, kappa as u64)?;
        report.min_heavy_product_class = Some(r);
        report.covered_products = Some(covered.len());
        report.lemma_bound = Some(bound);
        report.lemma_holds = Some(covered.len() as u128 * den >= num);
    }
    Ok(report)
}
