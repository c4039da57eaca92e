//! Exhaustive `(n, m)` grid scans.
//!
//! The grid `2 <= n < m <= n_max` is cut into slices of fixed `m`, handed to a
//! rayon pool, and collected back in `m` order, so the output does not depend
//! on the thread count.

use std::fmt;
use std::io::Write;
use std::sync::atomic::{AtomicU64, Ordering};

use prodsets_core::numtheory::SpfSieve;
use prodsets_core::productset::intersect_bruteforce;
use prodsets_core::tpairs::analyze_pair_with;
use rayon::prelude::*;
use serde::Serialize;

/// Parities of `(m, n)`, `e`ven or `o`dd, `m` first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityClass {
    Ee,
    Eo,
    Oe,
    Oo,
}

impl ParityClass {
    pub const ALL: [ParityClass; 4] = [Self::Ee, Self::Eo, Self::Oe, Self::Oo];

    pub fn of(n: u64, m: u64) -> Self {
        match (m.is_multiple_of(2), n.is_multiple_of(2)) {
            (true, true) => Self::Ee,
            (true, false) => Self::Eo,
            (false, true) => Self::Oe,
            (false, false) => Self::Oo,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Ee => "ee",
            Self::Eo => "eo",
            Self::Oe => "oe",
            Self::Oo => "oo",
        }
    }
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One grid point. Field order is the CSV column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScanRecord {
    pub n: u64,
    pub m: u64,
    pub intersection_size: u64,
    pub tau: u64,
    pub parity_class: ParityClass,
    pub equality: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParityStats {
    pub parity_class: ParityClass,
    pub pairs: u64,
    pub equality_count: u64,
    pub equality_frequency: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanSummary {
    pub n_max: u64,
    pub pairs: u64,
    pub max_intersection: u64,
    /// First `(n, m)` in `(m, n)` order attaining the maximum.
    pub max_attained_at: Option<(u64, u64)>,
    pub brute_force_checked: bool,
    pub parity: Vec<ParityStats>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanOutcome {
    pub records: Vec<ScanRecord>,
    pub summary: ScanSummary,
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub n_max: u64,
    /// `None` uses every available core.
    pub threads: Option<usize>,
    /// Keep only records that raise the running maximum intersection size.
    pub running_max_only: bool,
    /// Recompute every intersection by brute force and compare.
    pub verify_brute: bool,
    pub sieve_limit: u32,
    pub progress: bool,
}

impl ScanOptions {
    pub fn new(n_max: u64) -> Self {
        Self {
            n_max,
            threads: None,
            running_max_only: false,
            verify_brute: false,
            sieve_limit: 100_000_000,
            progress: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScanError {
    #[error("scan needs n_max >= 3, got {0}")]
    TooSmall(u64),
    #[error(transparent)]
    Core(#[from] prodsets_core::Error),
    #[error("could not start worker pool: {0}")]
    Pool(String),
    #[error("falsification at (n, m) = ({n}, {m}): {what}")]
    Falsification { n: u64, m: u64, what: &'static str },
}

fn scan_slice(sieve: &SpfSieve, m: u64, verify_brute: bool) -> Result<Vec<ScanRecord>, ScanError> {
    let mut out = Vec::with_capacity(m as usize - 2);
    for n in 2..m {
        let analysis = analyze_pair_with(sieve, n, m)?;
        let size = analysis.intersection.len() as u64;
        let tau = analysis.tpairs.len() as u64;
        if verify_brute && intersect_bruteforce(n, m)? != analysis.intersection {
            return Err(ScanError::Falsification { n, m, what: "fast and brute-force intersections differ" });
        }
        if size > tau {
            return Err(ScanError::Falsification { n, m, what: "intersection larger than tau" });
        }
        if tau > analysis.divisor_count {
            return Err(ScanError::Falsification { n, m, what: "tau larger than d(m^2 - n^2)" });
        }
        let parity_class = ParityClass::of(n, m);
        if parity_class == ParityClass::Eo && size != tau {
            return Err(ScanError::Falsification { n, m, what: "m even, n odd but intersection != tau" });
        }
        out.push(ScanRecord { n, m, intersection_size: size, tau, parity_class, equality: size == tau });
    }
    Ok(out)
}

/// Scans every `2 <= n < m <= n_max`. Any violated bound aborts with
/// [`ScanError::Falsification`].
pub fn scan(opts: &ScanOptions) -> Result<ScanOutcome, ScanError> {
    if opts.n_max < 3 {
        return Err(ScanError::TooSmall(opts.n_max));
    }
    if opts.n_max > prodsets_core::MAX_INDEX {
        return Err(prodsets_core::Error::TooLarge {
            what: "n_max",
            value: opts.n_max,
            max: prodsets_core::MAX_INDEX,
        }
        .into());
    }
    // m + n < 2 n_max
    let needed = (2 * opts.n_max).min(u64::from(opts.sieve_limit)) as u32;
    let sieve = SpfSieve::new(needed);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = opts.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| ScanError::Pool(e.to_string()))?;

    let done = AtomicU64::new(0);
    let total_slices = opts.n_max - 2;
    let slices: Vec<Vec<ScanRecord>> = pool.install(|| {
        (3..=opts.n_max)
            .into_par_iter()
            .map(|m| {
                let slice = scan_slice(&sieve, m, opts.verify_brute);
                if opts.progress {
                    let d = done.fetch_add(1, Ordering::Relaxed) + 1;
                    if d.is_multiple_of(100) || d == total_slices {
                        let _ = writeln!(std::io::stderr(), "scan: {d}/{total_slices} slices");
                    }
                }
                slice
            })
            .collect::<Result<_, _>>()
    })?;

    let mut counts = [(0u64, 0u64); 4];
    let mut pairs = 0;
    let mut best = 0;
    let mut best_at = None;
    let mut records = Vec::new();
    for rec in slices.into_iter().flatten() {
        pairs += 1;
        let slot = &mut counts[rec.parity_class as usize];
        slot.0 += 1;
        slot.1 += u64::from(rec.equality);
        let raises = rec.intersection_size > best;
        if raises {
            best = rec.intersection_size;
            best_at = Some((rec.n, rec.m));
        }
        if !opts.running_max_only || raises {
            records.push(rec);
        }
    }
    let parity = ParityClass::ALL
        .iter()
        .zip(counts)
        .map(|(&parity_class, (pairs, equality_count))| ParityStats {
            parity_class,
            pairs,
            equality_count,
            equality_frequency: if pairs == 0 { 0.0 } else { equality_count as f64 / pairs as f64 },
        })
        .collect();
    Ok(ScanOutcome {
        records,
        summary: ScanSummary {
            n_max: opts.n_max,
            pairs,
            max_intersection: best,
            max_attained_at: best_at,
            brute_force_checked: opts.verify_brute,
            parity,
        },
    })
}
