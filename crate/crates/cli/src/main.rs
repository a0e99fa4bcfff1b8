//! `eiscoh`: single-instance analysis, Kostant-set inspection, sweep
//! campaigns and report re-rendering.
//!
//! Exit codes: 0 for a clean run (including AGREE_FALSE verdicts), 2 for
//! parse/validation/config errors, 3 when a mathematical discrepancy is
//! found — scripts must be able to tell a counterexample from a bad
//! invocation.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use eiscoh::report::{
    block_summary_line, has_findings, lemma_to_json, lemma_to_text, sweep_from_json, sweep_to_csv,
    sweep_to_json, sweep_to_text,
};
use eiscoh::verifier::{
    sweep, verify_instance, LemmaInstance, SweepConfig, SweepReport, TwistRange, Verbosity, Verdict,
};
use eiscoh::weights::Weight;
use eiscoh::weyl::{gaussian_binomial, kostant_reps, length_polynomial};

#[derive(Parser)]
#[command(
    name = "eiscoh",
    version,
    about = "Exact combinatorics of rank-one Eisenstein cohomology for GL(N)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one instance: derived quantities, critical sets, witness
    /// search and ratio statements
    Analyze {
        /// First weight, e.g. `[1,0]` (GL_n, n even)
        lambda: String,
        /// Second weight, e.g. `[2]` (GL_n', n' odd)
        lambda_prime: String,
        /// Emit the instance report as JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// List the minimal coset representatives for GL_n x GL_n' in GL_N
    Kostant {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n_prime: u64,
        /// Only representatives of this length
        #[arg(long)]
        length: Option<usize>,
    },
    /// Run a sweep campaign over canonical weights and twists
    Sweep(SweepArgs),
    /// Re-render a saved JSON sweep report as text or CSV
    Report {
        /// Path to a JSON report produced by `sweep --format json`
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone, Default)]
struct SweepArgs {
    /// Block pairs, e.g. 2x1,2x3
    #[arg(long, value_delimiter = ',')]
    blocks: Vec<String>,
    /// Entry bound B for canonical weights (|entry| <= B)
    #[arg(long)]
    bound: Option<i64>,
    /// Twist selection: `auto`, `auto:MARGIN`, or `LO..HI`
    #[arg(long, allow_hyphen_values = true)]
    twists: Option<String>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Report path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    verbosity: Option<VerbosityArg>,
    /// Worker threads for instance evaluation (reports do not depend on it)
    #[arg(long)]
    threads: Option<usize>,
    /// Flat key = value config file; explicit flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
enum VerbosityArg {
    Summary,
    Full,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Analyze {
            lambda,
            lambda_prime,
            json,
        } => cmd_analyze(&lambda, &lambda_prime, json),
        Command::Kostant { n, n_prime, length } => {
            cmd_kostant(n as usize, n_prime as usize, length)
        }
        Command::Sweep(args) => cmd_sweep(args),
        Command::Report { input, format, out } => cmd_report(&input, format, out.as_deref()),
    }
}

fn parse_weight(token: &str) -> Result<Weight> {
    token.parse::<Weight>().map_err(|e| anyhow!("{e}"))
}

fn cmd_analyze(lambda_token: &str, lambda_prime_token: &str, json: bool) -> Result<i32> {
    let lambda = parse_weight(lambda_token)?;
    let lambda_prime = parse_weight(lambda_prime_token)?;
    let inst = LemmaInstance::new(lambda, lambda_prime)
        .with_context(|| format!("instance ({lambda_token}, {lambda_prime_token})"))?;
    let report = verify_instance(&inst);
    if json {
        print!("{}", lemma_to_json(&report));
    } else {
        print!("{}", lemma_to_text(&report));
    }
    Ok(if report.verdict == Verdict::Discrepancy {
        3
    } else {
        0
    })
}

fn poly_string(coeffs: &[i64]) -> String {
    let mut terms = Vec::new();
    for (exp, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let term = match (c, exp) {
            (c, 0) => format!("{c}"),
            (1, 1) => "q".to_string(),
            (c, 1) => format!("{c}q"),
            (1, e) => format!("q^{e}"),
            (c, e) => format!("{c}q^{e}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn cmd_kostant(n: usize, n_prime: usize, length: Option<usize>) -> Result<i32> {
    let total = n + n_prime;
    let reps = kostant_reps(n, n_prime);
    let poly = length_polynomial(&reps);
    let gauss = gaussian_binomial(total, n);
    println!(
        "W^P for GL_{total} with Levi GL_{n} x GL_{n_prime} ({} representatives)",
        reps.len()
    );
    match length {
        Some(target) => {
            let mut count = 0usize;
            for w in reps.iter().filter(|w| w.length() == target) {
                println!("{w}  length {}", w.length());
                count += 1;
            }
            let coeff = gauss.get(target).copied().unwrap_or(0);
            println!("count at length {target}: {count}");
            println!("coefficient of q^{target} in [{total} choose {n}]_q: {coeff}");
            println!(
                "cross-check: {}",
                if count as i64 == coeff {
                    "OK"
                } else {
                    "MISMATCH"
                }
            );
        }
        None => {
            for w in &reps {
                println!("{w}  length {}", w.length());
            }
            println!("length polynomial:          {}", poly_string(&poly));
            println!(
                "[{total} choose {n}]_q (recurrence): {}",
                poly_string(&gauss)
            );
            println!(
                "cross-check: {}",
                if poly == gauss { "OK" } else { "MISMATCH" }
            );
        }
    }
    Ok(0)
}

#[derive(Default)]
struct PartialSweep {
    blocks: Option<Vec<(usize, usize)>>,
    bound: Option<i64>,
    twists: Option<TwistRange>,
    format: Option<OutputFormat>,
    out: Option<PathBuf>,
    verbosity: Option<Verbosity>,
    threads: Option<usize>,
}

fn parse_block_token(token: &str) -> Result<(usize, usize)> {
    let (a, b) = token
        .split_once('x')
        .ok_or_else(|| anyhow!("invalid block pair `{token}`; expected NxN' like 2x1"))?;
    let n: usize = a.trim().parse().context("block pair")?;
    let np: usize = b.trim().parse().context("block pair")?;
    Ok((n, np))
}

fn parse_twists_token(token: &str) -> Result<TwistRange> {
    let token = token.trim();
    if token == "auto" {
        return Ok(TwistRange::CoverInterval { margin: 2 });
    }
    if let Some(m) = token.strip_prefix("auto:") {
        let margin: i64 = m.trim().parse().context("twist margin")?;
        return Ok(TwistRange::CoverInterval { margin });
    }
    if let Some((lo, hi)) = token.split_once("..") {
        let lo: i64 = lo.trim().parse().context("twist range")?;
        let hi: i64 = hi.trim().parse().context("twist range")?;
        return Ok(TwistRange::Explicit { lo, hi });
    }
    bail!("invalid twists `{token}`; expected `auto`, `auto:MARGIN`, or `LO..HI`")
}

fn parse_format_token(token: &str) -> Result<OutputFormat> {
    match token.trim() {
        "json" => Ok(OutputFormat::Json),
        "csv" => Ok(OutputFormat::Csv),
        "text" => Ok(OutputFormat::Text),
        other => bail!("invalid format `{other}`"),
    }
}

fn parse_verbosity_token(token: &str) -> Result<Verbosity> {
    match token.trim() {
        "summary" => Ok(Verbosity::Summary),
        "full" => Ok(Verbosity::Full),
        other => bail!("invalid verbosity `{other}`"),
    }
}

/// Flat `key = value` lines; `#` starts a comment line.
fn parse_config_file(path: &Path) -> Result<PartialSweep> {
    let body =
        fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    let mut out = PartialSweep::default();
    for (lineno, raw) in body.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("{}:{}: expected `key = value`", path.display(), lineno + 1))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "blocks" => {
                let pairs = value
                    .split(',')
                    .map(parse_block_token)
                    .collect::<Result<Vec<_>>>()?;
                out.blocks = Some(pairs);
            }
            "bound" => out.bound = Some(value.parse().context("bound")?),
            "twists" => out.twists = Some(parse_twists_token(value)?),
            "format" => out.format = Some(parse_format_token(value)?),
            "out" => out.out = Some(PathBuf::from(value)),
            "verbosity" => out.verbosity = Some(parse_verbosity_token(value)?),
            "threads" => out.threads = Some(value.parse().context("threads")?),
            other => bail!("{}:{}: unknown key `{other}`", path.display(), lineno + 1),
        }
    }
    Ok(out)
}

struct SweepSettings {
    config: SweepConfig,
    format: OutputFormat,
    out: Option<PathBuf>,
    threads: Option<usize>,
}

fn merge_sweep_settings(args: &SweepArgs) -> Result<SweepSettings> {
    let mut settings = match &args.config {
        Some(path) => parse_config_file(path)?,
        None => PartialSweep::default(),
    };
    if !args.blocks.is_empty() {
        let pairs = args
            .blocks
            .iter()
            .map(|t| parse_block_token(t))
            .collect::<Result<Vec<_>>>()?;
        settings.blocks = Some(pairs);
    }
    if let Some(bound) = args.bound {
        settings.bound = Some(bound);
    }
    if let Some(t) = &args.twists {
        settings.twists = Some(parse_twists_token(t)?);
    }
    if let Some(f) = args.format {
        settings.format = Some(f);
    }
    if let Some(o) = &args.out {
        settings.out = Some(o.clone());
    }
    if let Some(v) = args.verbosity {
        settings.verbosity = Some(match v {
            VerbosityArg::Summary => Verbosity::Summary,
            VerbosityArg::Full => Verbosity::Full,
        });
    }
    if let Some(t) = args.threads {
        settings.threads = Some(t);
    }

    let block_pairs = settings
        .blocks
        .ok_or_else(|| anyhow!("no block pairs given (use --blocks or a config file)"))?;
    let entry_bound = settings
        .bound
        .ok_or_else(|| anyhow!("no entry bound given (use --bound or a config file)"))?;
    let format = settings.format;
    let mut verbosity = settings.verbosity.unwrap_or(Verbosity::Summary);
    // CSV output is per instance, so it needs the full dump
    if format == Some(OutputFormat::Csv) {
        verbosity = Verbosity::Full;
    }
    let config = SweepConfig {
        block_pairs,
        entry_bound,
        twists: settings
            .twists
            .unwrap_or(TwistRange::CoverInterval { margin: 2 }),
        verbosity,
    };
    Ok(SweepSettings {
        config,
        format: format.unwrap_or(OutputFormat::Json),
        out: settings.out,
        threads: settings.threads,
    })
}

fn write_or_print(path: Option<&Path>, body: &str) -> Result<()> {
    match path {
        Some(path) => {
            fs::write(path, body).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn render_sweep(report: &SweepReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => sweep_to_json(report),
        OutputFormat::Csv => sweep_to_csv(report),
        OutputFormat::Text => sweep_to_text(report),
    }
}

fn cmd_sweep(args: SweepArgs) -> Result<i32> {
    let SweepSettings {
        config,
        format,
        out,
        threads,
    } = merge_sweep_settings(&args)?;
    let report = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .context("building thread pool")?
            .install(|| sweep(&config)),
        None => sweep(&config),
    }?;
    for s in &report.block_summaries {
        println!("{}", block_summary_line(s));
    }
    for failure in &report.coverage_failures {
        eprintln!("coverage failure: {failure}");
    }
    if report.counts.discrepancy > 0 {
        eprintln!(
            "DISCREPANCY: {} instance(s) disagree between the closed form and the brute force; see the report for full counterexamples",
            report.counts.discrepancy
        );
    }
    let body = render_sweep(&report, format);
    write_or_print(out.as_deref(), &body)?;
    Ok(if has_findings(&report) { 3 } else { 0 })
}

fn cmd_report(input: &Path, format: OutputFormat, out: Option<&Path>) -> Result<i32> {
    let body =
        fs::read_to_string(input).with_context(|| format!("reading report {}", input.display()))?;
    let report =
        sweep_from_json(&body).with_context(|| format!("parsing report {}", input.display()))?;
    write_or_print(out, &render_sweep(&report, format))?;
    Ok(if has_findings(&report) { 3 } else { 0 })
}
