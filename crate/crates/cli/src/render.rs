//! Table, CSV and JSON rendering.
//!
//! JSON output is always a single object with the keys `command`, `params`,
//! `result` and `version`, in that order. CSV output has one header line.

use std::fmt::Write;

use clap::ValueEnum;
use prodsets_core::sumproduct::SumProductReport;
use serde::Serialize;
use serde_json::Value;

use crate::scan::ScanOutcome;
use crate::{BoundCheckResult, ConstructedPair, IntersectResult, PairRow, TauResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Serialize)]
struct Envelope<'a, R: Serialize> {
    command: &'a str,
    params: &'a Value,
    result: &'a R,
    version: &'a str,
}

fn json<R: Serialize>(command: &str, params: &Value, result: &R) -> String {
    let env = Envelope { command, params, result, version: env!("CARGO_PKG_VERSION") };
    let mut s = serde_json::to_string_pretty(&env).expect("report serializes");
    s.push('\n');
    s
}

fn set(values: &[u64]) -> String {
    let inner: Vec<String> = values.iter().map(u64::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "undefined".to_string(), |x| x.to_string())
}

fn optf(v: Option<f64>) -> String {
    v.map_or_else(|| "undefined".to_string(), |x| format!("{x:.6}"))
}

pub fn intersect(fmt: Format, params: &Value, n: u64, m: u64, r: &IntersectResult) -> String {
    match fmt {
        Format::Json => json("intersect", params, r),
        Format::Csv => {
            let mut s = String::from("n,m,size,elements,match\n");
            let elems: Vec<String> = r.elements.iter().map(u64::to_string).collect();
            let _ = writeln!(s, "{n},{m},{},{},{}", r.size, elems.join(";"), opt(r.matches));
            s
        }
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "A_{n} ∩ A_{m} = {}", set(&r.elements));
            let _ = writeln!(s, "size: {}", r.size);
            if let Some(ok) = r.matches {
                let _ = writeln!(s, "brute force: {}", set(r.brute_elements.as_deref().unwrap_or(&[])));
                let _ = writeln!(s, "match: {ok}");
            }
            s
        }
    }
}

fn pair_csv_row(s: &mut String, prefix: &str, p: &PairRow) {
    let _ = writeln!(s, "{prefix}{},{},{},{},{}", p.lower, p.upper, opt(p.k), opt(p.r), opt(p.common_value));
}

fn pair_table(s: &mut String, pairs: &[PairRow]) {
    let _ = writeln!(s, "{:>12} {:>12} {:>10} {:>10} {:>14}", "M", "N", "k", "r", "value");
    for p in pairs {
        let _ = writeln!(
            s,
            "{:>12} {:>12} {:>10} {:>10} {:>14}",
            p.lower,
            p.upper,
            opt(p.k).replace("undefined", "-"),
            opt(p.r).replace("undefined", "-"),
            opt(p.common_value).replace("undefined", "-"),
        );
    }
}

pub fn tau(fmt: Format, params: &Value, n: u64, m: u64, r: &TauResult) -> String {
    match fmt {
        Format::Json => json("tau", params, r),
        Format::Csv => {
            let mut s = String::from("M,N,k,r,common_value\n");
            for p in &r.pairs {
                pair_csv_row(&mut s, "", p);
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "m^2 - n^2 = {}^2 - {}^2 = {} (d = {})", m, n, r.difference, r.divisor_count);
            let _ = writeln!(s, "tau: {}", r.tau);
            let _ = writeln!(s, "intersection size: {}", r.intersection_size);
            pair_table(&mut s, &r.pairs);
            s
        }
    }
}

pub fn scan(fmt: Format, params: &Value, out: &ScanOutcome, summary_only: bool) -> String {
    match fmt {
        Format::Json => {
            if summary_only {
                json("scan", params, &serde_json::json!({ "summary": out.summary }))
            } else {
                json("scan", params, out)
            }
        }
        Format::Csv => {
            let mut s = String::from("n,m,intersection_size,tau,parity_class,equality\n");
            if !summary_only {
                for r in &out.records {
                    let _ =
                        writeln!(s, "{},{},{},{},{},{}", r.n, r.m, r.intersection_size, r.tau, r.parity_class, r.equality);
                }
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            if !summary_only {
                let _ = writeln!(s, "{:>8} {:>8} {:>6} {:>6} {:>6} {:>8}", "n", "m", "size", "tau", "parity", "equality");
                for r in &out.records {
                    let _ = writeln!(
                        s,
                        "{:>8} {:>8} {:>6} {:>6} {:>6} {:>8}",
                        r.n, r.m, r.intersection_size, r.tau, r.parity_class, r.equality
                    );
                }
                s.push('\n');
            }
            let sm = &out.summary;
            let _ = writeln!(s, "pairs scanned: {}", sm.pairs);
            let _ = writeln!(s, "brute-force checked: {}", sm.brute_force_checked);
            match sm.max_attained_at {
                Some((n, m)) => {
                    let _ = writeln!(s, "max intersection: {} (first at n = {n}, m = {m})", sm.max_intersection);
                }
                None => {
                    let _ = writeln!(s, "max intersection: 0");
                }
            }
            let _ = writeln!(s, "equality by parity of (m, n):");
            for p in &sm.parity {
                let _ = writeln!(
                    s,
                    "  {}: {}/{} ({:.6})",
                    p.parity_class, p.equality_count, p.pairs, p.equality_frequency
                );
            }
            s
        }
    }
}

pub fn construct(fmt: Format, params: &Value, rows: &[ConstructedPair]) -> String {
    match fmt {
        Format::Json => json("construct", params, &rows),
        Format::Csv => {
            let mut s = String::from("s,p,alpha,n,m,size,intersection\n");
            for r in rows {
                let elems: Vec<String> = r.intersection.iter().map(u64::to_string).collect();
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    r.spec.s(),
                    r.spec.p(),
                    r.spec.alpha(),
                    r.spec.n(),
                    r.spec.m(),
                    r.size,
                    elems.join(";")
                );
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            for (i, r) in rows.iter().enumerate() {
                if i > 0 {
                    s.push('\n');
                }
                let sp = &r.spec;
                let _ = writeln!(
                    s,
                    "s = {}, p = {}, alpha = {}: n = {}, m = {}",
                    sp.s(),
                    sp.p(),
                    sp.alpha(),
                    sp.n(),
                    sp.m()
                );
                let _ = writeln!(s, "A_{} ∩ A_{} = {} (size {})", sp.n(), sp.m(), set(&r.intersection), r.size);
                pair_table(&mut s, &r.predicted_pairs);
            }
            s
        }
    }
}

pub fn bound_check(fmt: Format, params: &Value, r: &BoundCheckResult) -> String {
    match fmt {
        Format::Json => json("bound-check", params, r),
        Format::Csv => {
            let mut s = String::from("x,divisor_count,bound\n");
            for v in &r.violations {
                let _ = writeln!(s, "{},{},{}", v.x, v.divisor_count, v.bound);
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "checked: {}", r.checked);
            let _ = writeln!(s, "violations (d(x) >= bound): {}", r.violation_count);
            let _ = writeln!(s, "max d(x)/bound: {:.6} at x = {}", r.max_ratio, r.max_ratio_at);
            for v in &r.violations {
                let _ = writeln!(s, "  x = {}: d = {}, bound = {:.6}", v.x, v.divisor_count, v.bound);
            }
            s
        }
    }
}

pub fn sumprod(fmt: Format, params: &Value, r: &SumProductReport) -> String {
    match fmt {
        Format::Json => json("sumprod", params, r),
        Format::Csv => {
            let value = serde_json::to_value(r).expect("report serializes");
            let obj = value.as_object().expect("report is an object");
            let mut s = String::from("field,value\n");
            // declared field order, not map order
            for key in REPORT_FIELDS {
                let v = &obj[*key];
                let text = if v.is_null() { "undefined".to_string() } else { v.to_string() };
                let _ = writeln!(s, "{key},{text}");
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            let rows: [(&str, String); 23] = [
                ("|A|", r.n_a.to_string()),
                ("max element", r.max_element.to_string()),
                ("|A+A|", r.sumset_size.to_string()),
                ("|A·A|", r.productset_size.to_string()),
                ("c", r.c.to_string()),
                ("element range bound", optf(r.element_range_bound)),
                ("within element range", opt(r.within_element_range)),
                ("heavy threshold", optf(r.heavy_threshold)),
                ("heavy threshold (alt)", optf(r.heavy_threshold_alt)),
                ("heavy classes", opt(r.heavy_class_count)),
                ("pairs in heavy classes", opt(r.heavy_pair_count)),
                ("min heavy |C_k|", opt(r.min_heavy_product_class)),
                ("max |C_k ∩ C_j|", opt(r.max_pairwise_product_intersection)),
                ("intersection cap", optf(r.intersection_cap)),
                ("cross-checked pairs", opt(r.cross_checked_pairs)),
                ("cross-check violations", opt(r.cross_check_violations)),
                ("covered products", opt(r.covered_products)),
                ("covering bound", optf(r.lemma_bound)),
                ("covering bound holds", opt(r.lemma_holds)),
                ("target exponent", optf(r.target_exponent)),
                ("target value", optf(r.target_value)),
                ("implied constant", r.implied_constant.to_string()),
                ("conclusion met", opt(r.conclusion_met)),
            ];
            for (k, v) in rows {
                let _ = writeln!(s, "{k:<24} {v}");
            }
            s
        }
    }
}

const REPORT_FIELDS: &[&str] = &[
    "n_a",
    "max_element",
    "sumset_size",
    "productset_size",
    "c",
    "element_range_bound",
    "within_element_range",
    "heavy_threshold",
    "heavy_threshold_alt",
    "heavy_class_count",
    "heavy_pair_count",
    "min_heavy_product_class",
    "max_pairwise_product_intersection",
    "intersection_cap",
    "cross_checked_pairs",
    "cross_check_violations",
    "covered_products",
    "lemma_bound",
    "lemma_holds",
    "target_exponent",
    "target_value",
    "implied_constant",
    "conclusion_met",
];
