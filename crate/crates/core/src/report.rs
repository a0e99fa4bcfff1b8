//! Rendering of instance and sweep reports: JSON (the canonical archival
//! format), CSV (one row per instance), and a human text form that uses
//! the customary notation (`a`, `d`, `p(μ)`, `a(μ)`, `ν₀`) so a report can
//! be read against the literature directly.
//!
//! All numeric output is exact; half-integers print as `p/2` fractions.
//! Rendering a given report is deterministic byte for byte.

use std::fmt::Write as _;

use crate::half::HalfInt;
use crate::verifier::{BlockSummary, LemmaReport, SweepReport, TwistRange};

/// Pretty JSON with a trailing newline; the byte-stable archival format.
pub fn sweep_to_json(report: &SweepReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serialization cannot fail");
    s.push('\n');
    s
}

pub fn sweep_from_json(input: &str) -> Result<SweepReport, serde_json::Error> {
    serde_json::from_str(input)
}

pub fn lemma_to_json(report: &LemmaReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serialization cannot fail");
    s.push('\n');
    s
}

fn csv_quote(token: &str) -> String {
    format!("\"{token}\"")
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

pub const CSV_HEADER: &str = "n,n_prime,lambda,lambda_prime,w,w_prime,p_mu,a_mu,interval_lo,interval_hi,closed_form,brute_force,verdict,nu_zero";

fn csv_row(r: &LemmaReport) -> String {
    let d = &r.derived;
    let (lo, hi) = match d.interval {
        Some(iv) => (iv.lo.to_string(), iv.hi.to_string()),
        None => (String::new(), String::new()),
    };
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.n,
        r.n_prime,
        csv_quote(&r.lambda.to_string()),
        csv_quote(&r.lambda_prime.to_string()),
        d.motivic_weight,
        d.motivic_weight_prime,
        opt(&d.p_mu),
        d.a_mu,
        lo,
        hi,
        opt(&r.closed_form),
        r.brute_force,
        r.verdict,
        opt(&d.nu_zero),
    )
}

/// One row per instance. Uses the full instance dump when present and
/// falls back to the discrepancy list otherwise (re-render summary-level
/// reports with full verbosity to get every row).
pub fn sweep_to_csv(report: &SweepReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    let rows: &[LemmaReport] = match &report.instances {
        Some(instances) => instances,
        None => &report.discrepancies,
    };
    for r in rows {
        out.push_str(&csv_row(r));
        out.push('\n');
    }
    out
}

fn twists_text(t: &TwistRange) -> String {
    match t {
        TwistRange::Explicit { lo, hi } => format!("explicit {lo}..{hi}"),
        TwistRange::CoverInterval { margin } => format!("cover-interval margin {margin}"),
    }
}

/// The one-line summary printed per block pair.
pub fn block_summary_line(s: &BlockSummary) -> String {
    format!(
        "({},{}): orbits {}, instances {}, agree_true {}, agree_false {}, discrepancy {}, hypothesis_fail {}",
        s.n,
        s.n_prime,
        s.orbits,
        s.instances,
        s.counts.agree_true,
        s.counts.agree_false,
        s.counts.discrepancy,
        s.counts.hypothesis_fail
    )
}

fn gap_vector_text(a: &[i64]) -> String {
    let body: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    format!("({})", body.join(","))
}

fn int_list_text(xs: &[i64]) -> String {
    let body: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", body.join(", "))
}

fn half_list_text(xs: &[HalfInt]) -> String {
    let body: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", body.join(", "))
}

/// The detailed human rendering of one instance, as printed by `analyze`.
pub fn lemma_to_text(r: &LemmaReport) -> String {
    let d = &r.derived;
    let mut out = String::new();
    writeln!(
        out,
        "instance: λ = {} (GL_{}), λ' = {} (GL_{}), N = {}",
        r.lambda,
        r.n,
        r.lambda_prime,
        r.n_prime,
        r.n + r.n_prime
    )
    .unwrap();
    writeln!(out, "cuspidal parameters:").unwrap();
    writeln!(
        out,
        "  a  = {}  d  = {}  w  = {}",
        gap_vector_text(&d.a),
        d.d,
        d.motivic_weight
    )
    .unwrap();
    writeln!(
        out,
        "  a' = {}  d' = {}  w' = {}",
        gap_vector_text(&d.a_prime),
        d.d_prime,
        d.motivic_weight_prime
    )
    .unwrap();
    writeln!(out, "hodge pairs:  M = {}, M' = {}", d.hodge, d.hodge_prime).unwrap();
    writeln!(
        out,
        "tensor:       {} (middle multiplicity {})",
        d.hodge_tensor, d.middle_hodge_number
    )
    .unwrap();
    match (d.p_mu, d.interval) {
        (Some(p), Some(iv)) => {
            writeln!(
                out,
                "p(μ) = {}  a(μ) = {}  admissible interval {} (count {})",
                p,
                d.a_mu,
                iv,
                iv.count()
            )
            .unwrap();
            if let Some(coh) = &d.critical_coh {
                writeln!(out, "critical set (cohomological): {}", int_list_text(coh)).unwrap();
            }
            if let Some(auto) = &d.critical_automorphic {
                // the set is symmetric about 1/2 + a(μ), not about the
                // functional-equation point 1/2, unless a(μ) = 0
                let center = d.a_mu + HalfInt::half_of(1);
                let note = if d.a_mu == HalfInt::ZERO {
                    String::new()
                } else {
                    format!(" — centered at {center}, offset from 1/2 by a(μ)")
                };
                writeln!(
                    out,
                    "critical set (automorphic):   {}{note}",
                    half_list_text(auto)
                )
                .unwrap();
            }
            if let Some(nu0) = d.nu_zero {
                let note = match d.nu_zero_automorphic {
                    Some(img) => format!("integer; automorphic image {img} = -N/2"),
                    None => "not an integer".to_string(),
                };
                writeln!(out, "ν₀ = {nu0} ({note})").unwrap();
            }
        }
        _ => {
            writeln!(
                out,
                "a(μ) = {}  (middle Hodge number nonzero: outside the lemma hypotheses)",
                d.a_mu
            )
            .unwrap();
        }
    }
    writeln!(
        out,
        "closed form: {}  brute force: {}  witnesses: {}",
        r.closed_form
            .map(|b| b.to_string())
            .unwrap_or_else(|| "n/a".into()),
        r.brute_force,
        r.witness_count
    )
    .unwrap();
    if let Some(w) = &r.witness {
        writeln!(
            out,
            "witness: w = {} (length {}), μ̃ = {}",
            w.w, w.length, w.mu_tilde
        )
        .unwrap();
    }
    match &d.ratio_statements {
        Some(statements) if !statements.is_empty() => {
            writeln!(out, "ratio statements:").unwrap();
            for st in statements {
                writeln!(
                    out,
                    "  m = {}: m₀ = {}, ε_m = {}, {}",
                    st.m(),
                    st.m0(),
                    st.epsilon_m(),
                    st.claim()
                )
                .unwrap();
            }
        }
        Some(_) => {
            writeln!(
                out,
                "ratio statements: none (no successive critical pair exists)"
            )
            .unwrap();
        }
        None => {}
    }
    writeln!(out, "verdict: {}", r.verdict).unwrap();
    out
}

/// The human rendering of a sweep: config echo, per-pair summaries,
/// aggregate counts, any coverage failures, every discrepancy in full, and
/// (at full verbosity) one compact line per instance.
pub fn sweep_to_text(report: &SweepReport) -> String {
    let mut out = String::new();
    writeln!(out, "sweep report").unwrap();
    let blocks: Vec<String> = report
        .config
        .block_pairs
        .iter()
        .map(|(n, np)| format!("({n},{np})"))
        .collect();
    writeln!(
        out,
        "config: blocks = {}; entry bound = {}; twists = {}",
        blocks.join(","),
        report.config.entry_bound,
        twists_text(&report.config.twists)
    )
    .unwrap();
    for s in &report.block_summaries {
        writeln!(out, "{}", block_summary_line(s)).unwrap();
    }
    writeln!(
        out,
        "counts: agree_true = {}, agree_false = {}, discrepancy = {}, hypothesis_fail = {} (total {})",
        report.counts.agree_true,
        report.counts.agree_false,
        report.counts.discrepancy,
        report.counts.hypothesis_fail,
        report.counts.total()
    )
    .unwrap();
    if report.coverage_failures.is_empty() {
        writeln!(out, "coverage failures: none").unwrap();
    } else {
        writeln!(out, "coverage failures:").unwrap();
        for f in &report.coverage_failures {
            writeln!(out, "  {f}").unwrap();
        }
    }
    if report.discrepancies.is_empty() {
        writeln!(out, "discrepancies: none").unwrap();
    } else {
        writeln!(out, "discrepancies ({}):", report.discrepancies.len()).unwrap();
        for r in &report.discrepancies {
            for line in lemma_to_text(r).lines() {
                writeln!(out, "  {line}").unwrap();
            }
        }
    }
    if let Some(instances) = &report.instances {
        writeln!(out, "instances ({}):", instances.len()).unwrap();
        for r in instances {
            let d = &r.derived;
            writeln!(
                out,
                "  λ={} λ'={} p(μ)={} a(μ)={} interval={} ν₀={} closed={} brute={} {}",
                r.lambda,
                r.lambda_prime,
                opt(&d.p_mu),
                d.a_mu,
                d.interval.map(|iv| iv.to_string()).unwrap_or_default(),
                opt(&d.nu_zero),
                opt(&r.closed_form),
                r.brute_force,
                r.verdict
            )
            .unwrap();
        }
    }
    out
}

/// True when the report should flag the run via the distinguished exit
/// code for mathematical findings.
pub fn has_findings(report: &SweepReport) -> bool {
    report.counts.discrepancy > 0
}
