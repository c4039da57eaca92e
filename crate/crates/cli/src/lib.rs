//! Command-line front end for `prodsets-core`: exhaustive scans, family
//! constructions, divisor-bound checks and sum-product reports, rendered as
//! tables, CSV or JSON.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 falsification (an oracle
//! mismatch or a violated bound).

pub mod input;
pub mod render;
pub mod scan;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use prodsets_core::family::{construct_pair, construct_sequence, predicted_pairs, FamilySpec};
use prodsets_core::numtheory::{divisor_bound, factorize_difference_of_squares, Factorizer, SpfSieve, TrialDivision};
use prodsets_core::productset::intersect_bruteforce;
use prodsets_core::sumproduct::{conditional_experiment, elementary_report};
use prodsets_core::tpairs::{enumerate_tpairs, intersect_fast, pair_to_kr, TPair};
use serde::Serialize;
use serde_json::json;

use render::Format;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FALSIFIED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "prodsets", version, about = "Intersections of the product sets A_k = {r(k-r)}")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Worker threads for scans (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for randomly generated inputs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Fast,
    Brute,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// A_n ∩ A_m for n < m.
    Intersect {
        n: u64,
        m: u64,
        #[arg(long, value_enum, default_value_t = Method::Fast)]
        method: Method,
    },
    /// Admissible factor pairs of m^2 - n^2 and their solutions.
    Tau { n: u64, m: u64 },
    /// Every pair 2 <= n < m <= n_max.
    Scan {
        #[arg(long)]
        n_max: u64,
        /// Only emit records that raise the running maximum intersection size.
        #[arg(long)]
        running_max: bool,
        /// Omit records, print the summary only.
        #[arg(long)]
        summary_only: bool,
        /// Cross-check every pair against the brute-force intersection.
        #[arg(long)]
        verify_brute: bool,
        /// Largest value factored through the smallest-prime-factor table.
        #[arg(long, default_value_t = 100_000_000)]
        sieve_limit: u32,
        /// Report progress on standard error.
        #[arg(long)]
        progress: bool,
    },
    /// Pairs (n, m) with exactly s common elements.
    Construct {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        alpha: Option<u32>,
        /// Emit a sequence of this many pairs over increasing primes.
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Compare d(x) with x^((1+eps) ln 2 / ln ln x) over a range.
    BoundCheck {
        #[arg(long, default_value_t = 16)]
        x_min: u64,
        #[arg(long)]
        x_max: u64,
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        /// How many violations to list.
        #[arg(long, default_value_t = 20)]
        list: usize,
    },
    /// Sum-product accounting for a set read from a file or drawn at random.
    Sumprod {
        /// One positive integer per line, '#' comments.
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        input: Option<PathBuf>,
        /// Draw N distinct values from 1..=MAX using --seed.
        #[arg(long, num_args = 2, value_names = ["N", "MAX"])]
        random: Option<Vec<u64>>,
        #[arg(long, default_value_t = 0.5)]
        c: f64,
    },
}

/// What a successful invocation prints, and its exit code (0 or
/// [`EXIT_FALSIFIED`] when a report shows a violation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Rejected by the argument parser; the message is fully formatted.
    #[error("{0}")]
    Arguments(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Falsified(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Arguments(_) | Self::Usage(_) => EXIT_USAGE,
            Self::Falsified(_) => EXIT_FALSIFIED,
        }
    }
}

impl From<prodsets_core::Error> for CliError {
    fn from(e: prodsets_core::Error) -> Self {
        match e {
            prodsets_core::Error::Falsification(_) => Self::Falsified(e.to_string()),
            _ => Self::Usage(e.to_string()),
        }
    }
}

impl From<scan::ScanError> for CliError {
    fn from(e: scan::ScanError) -> Self {
        match e {
            scan::ScanError::Falsification { .. } => Self::Falsified(e.to_string()),
            scan::ScanError::Core(inner) => inner.into(),
            _ => Self::Usage(e.to_string()),
        }
    }
}

impl From<input::InputError> for CliError {
    fn from(e: input::InputError) -> Self {
        Self::Usage(e.to_string())
    }
}

#[derive(Debug, Serialize)]
pub struct IntersectResult {
    pub elements: Vec<u64>,
    pub size: usize,
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_elements: Option<Vec<u64>>,
}

#[derive(Debug, Serialize)]
pub struct PairRow {
    #[serde(rename = "M")]
    pub lower: u64,
    #[serde(rename = "N")]
    pub upper: u64,
    pub k: Option<u64>,
    pub r: Option<u64>,
    pub common_value: Option<u64>,
}

impl From<&TPair> for PairRow {
    fn from(t: &TPair) -> Self {
        let sol = pair_to_kr(t);
        Self {
            lower: t.lower,
            upper: t.upper,
            k: sol.map(|s| s.k),
            r: sol.map(|s| s.r),
            common_value: sol.map(|s| s.common_value),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TauResult {
    pub difference: u64,
    pub divisor_count: u64,
    pub tau: usize,
    pub intersection_size: usize,
    pub pairs: Vec<PairRow>,
}

#[derive(Debug, Serialize)]
pub struct ConstructedPair {
    #[serde(flatten)]
    pub spec: FamilySpec,
    pub predicted_pairs: Vec<PairRow>,
    pub intersection: Vec<u64>,
    pub size: usize,
}

#[derive(Debug, Serialize)]
pub struct BoundViolation {
    pub x: u64,
    pub divisor_count: u64,
    pub bound: f64,
}

#[derive(Debug, Serialize)]
pub struct BoundCheckResult {
    pub checked: u64,
    pub violation_count: u64,
    pub violations: Vec<BoundViolation>,
    /// Largest `d(x) / bound` seen, and where.
    pub max_ratio: f64,
    pub max_ratio_at: u64,
}

/// Parses `args` (including the program name) and runs the command.
/// Help and version requests succeed with clap's text as output; argument
/// errors come back as [`CliError::Arguments`] with clap's rendered message.
pub fn run<I, T>(args: I) -> Result<Outcome, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => return Ok(Outcome { stdout: e.render().to_string(), code: 0 }),
        Err(e) => return Err(CliError::Arguments(e.render().to_string())),
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let fmt = cli.format;
    match &cli.command {
        Command::Intersect { n, m, method } => {
            let (n, m, method) = (*n, *m, *method);
            let (elements, brute) = match method {
                Method::Fast => (intersect_fast(n, m)?, None),
                Method::Brute => (intersect_bruteforce(n, m)?, None),
                Method::Both => (intersect_fast(n, m)?, Some(intersect_bruteforce(n, m)?)),
            };
            let matches = brute.as_ref().map(|b| *b == elements);
            let result = IntersectResult { size: elements.len(), elements, matches, brute_elements: brute };
            let params = json!({ "n": n, "m": m, "method": method });
            let code = if matches == Some(false) { EXIT_FALSIFIED } else { 0 };
            Ok(Outcome { stdout: render::intersect(fmt, &params, n, m, &result), code })
        }
        Command::Tau { n, m } => {
            let (n, m) = (*n, *m);
            let tpairs = enumerate_tpairs(n, m)?;
            let diff = factorize_difference_of_squares(&TrialDivision, n, m)?;
            let pairs: Vec<PairRow> = tpairs.iter().map(PairRow::from).collect();
            let result = TauResult {
                difference: diff.value(),
                divisor_count: diff.divisor_count(),
                tau: pairs.len(),
                intersection_size: pairs.iter().filter(|p| p.k.is_some()).count(),
                pairs,
            };
            let params = json!({ "n": n, "m": m });
            Ok(Outcome { stdout: render::tau(fmt, &params, n, m, &result), code: 0 })
        }
        Command::Scan { n_max, running_max, summary_only, verify_brute, sieve_limit, progress } => {
            let opts = scan::ScanOptions {
                n_max: *n_max,
                threads: cli.threads,
                running_max_only: *running_max,
                verify_brute: *verify_brute,
                sieve_limit: *sieve_limit,
                progress: *progress,
            };
            let outcome = scan::scan(&opts)?;
            // thread count is deliberately absent: output must not depend on it
            let params = json!({
                "n_max": n_max,
                "running_max": running_max,
                "summary_only": summary_only,
                "verify_brute": verify_brute,
            });
            Ok(Outcome { stdout: render::scan(fmt, &params, &outcome, *summary_only), code: 0 })
        }
        Command::Construct { s, p, alpha, count } => {
            let specs = match (*count, *p) {
                (0, _) => return Err(CliError::Usage("--count must be at least 1".into())),
                (1, Some(p)) => vec![construct_pair(*s, p, *alpha)?],
                (1, None) => vec![construct_pair(*s, 3, *alpha)?],
                (_, None) if alpha.is_none() => construct_sequence(*s, *count)?,
                _ => {
                    return Err(CliError::Usage(
                        "--count > 1 picks p and alpha itself; drop --p/--alpha".into(),
                    ))
                }
            };
            let mut rows = Vec::with_capacity(specs.len());
            for spec in specs {
                let intersection = intersect_fast(spec.n(), spec.m())?;
                if intersection.len() != spec.s() as usize {
                    return Err(CliError::Falsified(format!(
                        "(n, m) = ({}, {}) has {} common values, expected {}",
                        spec.n(),
                        spec.m(),
                        intersection.len(),
                        spec.s()
                    )));
                }
                rows.push(ConstructedPair {
                    predicted_pairs: predicted_pairs(&spec).iter().map(PairRow::from).collect(),
                    size: intersection.len(),
                    intersection,
                    spec,
                });
            }
            let params = json!({ "s": s, "p": p, "alpha": alpha, "count": count });
            Ok(Outcome { stdout: render::construct(fmt, &params, &rows), code: 0 })
        }
        Command::BoundCheck { x_min, x_max, epsilon, list } => {
            let result = bound_check(*x_min, *x_max, *epsilon, *list)?;
            let params = json!({ "x_min": x_min, "x_max": x_max, "epsilon": epsilon });
            Ok(Outcome { stdout: render::bound_check(fmt, &params, &result), code: 0 })
        }
        Command::Sumprod { input, random, c } => {
            let (set, source) = match (input, random) {
                (Some(path), None) => (input::read_set(path)?, json!({ "input": path.display().to_string() })),
                (None, Some(r)) => (
                    input::random_set(r[0], r[1], cli.seed)?,
                    json!({ "random": { "count": r[0], "max": r[1], "seed": cli.seed } }),
                ),
                _ => return Err(CliError::Usage("give exactly one of --input or --random".into())),
            };
            // below four elements only the plain sizes are meaningful
            let report = if set.len() < 4 { elementary_report(&set, *c)? } else { conditional_experiment(&set, *c)? };
            let params = json!({ "source": source, "c": c });
            let broken = report.cross_check_violations.unwrap_or(0) > 0 || report.lemma_holds == Some(false);
            Ok(Outcome {
                stdout: render::sumprod(fmt, &params, &report),
                code: if broken { EXIT_FALSIFIED } else { 0 },
            })
        }
    }
}

/// Scans `d(x)` against the divisor bound on `[x_min, x_max]`.
pub fn bound_check(x_min: u64, x_max: u64, epsilon: f64, list: usize) -> Result<BoundCheckResult, CliError> {
    if x_min < 16 || x_max < x_min {
        return Err(CliError::Usage(format!("need 16 <= x_min <= x_max, got [{x_min}, {x_max}]")));
    }
    divisor_bound(x_min, epsilon)?;
    let sieve = SpfSieve::new(x_max.min(100_000_000) as u32);
    let mut result = BoundCheckResult {
        checked: 0,
        violation_count: 0,
        violations: Vec::new(),
        max_ratio: 0.0,
        max_ratio_at: x_min,
    };
    for x in x_min..=x_max {
        let d = sieve.factorize(x)?.divisor_count();
        let bound = divisor_bound(x, epsilon)?;
        result.checked += 1;
        let ratio = d as f64 / bound;
        if ratio > result.max_ratio {
            result.max_ratio = ratio;
            result.max_ratio_at = x;
        }
        if d as f64 >= bound {
            result.violation_count += 1;
            if result.violations.len() < list {
                result.violations.push(BoundViolation { x, divisor_count: d, bound });
            }
        }
    }
    Ok(result)
}
