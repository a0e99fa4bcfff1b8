//! The combinatorial-lemma decision procedures and sweep campaigns.
//!
//! For a validated pair of weights on the two blocks, the lemma asks for a
//! dominant weight of `GL(N)` mapping to their concatenation under the dot
//! action of a Kostant representative of length `dim(U_P)/2`. Two
//! independent procedures answer it:
//!
//! * [`brute_force_lemma`] searches all representatives of the required
//!   length and tests dominance of the dot preimage — exhaustive and exact;
//! * [`closed_form_lemma`] tests the offset `a = d - d'` against the closed
//!   interval of [`crate::lvalues::admissible_interval`].
//!
//! [`verify_instance`] runs both and classifies the outcome. A disagreement
//! would be a counterexample to the conjectured equivalence, so sweeps
//! treat it as a first-class result to be dumped in full, never as a crash.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::half::HalfInt;
use crate::hodge::HodgeSet;
use crate::lvalues::{admissible_interval, AdmissibleInterval, CriticalData, RatioStatement};
use crate::weights::{CuspidalParams, Weight, WeightError};
use crate::weyl::{kostant_reps_of_length, BlockError, BlockPair, Perm};

/// `b_n`: the lowest degree in which cuspidal cohomology of `GL(n)` lives;
/// `n^2/4` for even `n` and `(n^2 - 1)/4` for odd `n`.
pub fn bottom_degree(n: i64) -> i64 {
    if n % 2 == 0 {
        n * n / 4
    } else {
        (n * n - 1) / 4
    }
}

/// Checks `b_N = b_n + b_{n'} + n n'/2`; holds for every valid block pair.
pub fn degree_identity(block: &BlockPair) -> bool {
    let n = block.n() as i64;
    let np = block.n_prime() as i64;
    bottom_degree(n + np) == bottom_degree(n) + bottom_degree(np) + n * np / 2
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error("first weight rejected: {0}")]
    Lambda(WeightError),
    #[error("second weight rejected: {0}")]
    LambdaPrime(WeightError),
    #[error("block sizes rejected: {0}")]
    Block(BlockError),
}

/// A validated input to the lemma: weights for `GL(n)` and `GL(n')` with
/// `n` even and `n'` odd, both passing the admission gate.
#[derive(Clone, Debug)]
pub struct LemmaInstance {
    lambda: Weight,
    lambda_prime: Weight,
    block: BlockPair,
    params: CuspidalParams,
    params_prime: CuspidalParams,
}

impl LemmaInstance {
    pub fn new(lambda: Weight, lambda_prime: Weight) -> Result<LemmaInstance, InstanceError> {
        let block =
            BlockPair::new(lambda.rank(), lambda_prime.rank()).map_err(InstanceError::Block)?;
        let params = lambda.validate().map_err(InstanceError::Lambda)?;
        let params_prime = lambda_prime
            .validate()
            .map_err(InstanceError::LambdaPrime)?;
        Ok(LemmaInstance {
            lambda,
            lambda_prime,
            block,
            params,
            params_prime,
        })
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn lambda_prime(&self) -> &Weight {
        &self.lambda_prime
    }

    pub fn block(&self) -> BlockPair {
        self.block
    }

    pub fn params(&self) -> &CuspidalParams {
        &self.params
    }

    pub fn params_prime(&self) -> &CuspidalParams {
        &self.params_prime
    }

    /// The concatenated Levi weight `mu`.
    pub fn mu(&self) -> Weight {
        self.lambda.concat(&self.lambda_prime)
    }

    /// `a = d - d'`, the offset between the two normalizations.
    pub fn a_mu(&self) -> HalfInt {
        self.params.d() - self.params_prime.d()
    }
}

/// A successful brute-force search result. The four defining conditions
/// (representative membership, length, dominance, dot-action equation) can
/// all be re-checked from these fields alone.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub w: Perm,
    pub length: usize,
    pub mu_tilde: Weight,
}

fn middle_length_reps(block: BlockPair) -> Vec<Perm> {
    kostant_reps_of_length(block.n(), block.n_prime(), block.unipotent_dim() / 2)
}

fn witnesses_among(reps: &[Perm], inst: &LemmaInstance) -> Vec<Witness> {
    let mu = inst.mu();
    reps.iter()
        .filter_map(|w| {
            let mu_tilde = w.dot_preimage(&mu);
            if mu_tilde.is_dominant() {
                Some(Witness {
                    w: w.clone(),
                    length: w.length(),
                    mu_tilde,
                })
            } else {
                None
            }
        })
        .collect()
}

/// All witnesses, in the deterministic representative order. The dot
/// preimage is computed per representative and kept only when dominant;
/// this is the exhaustive oracle the closed form is judged against.
pub fn brute_force_witnesses(inst: &LemmaInstance) -> Vec<Witness> {
    witnesses_among(&middle_length_reps(inst.block()), inst)
}

/// The first witness in deterministic order, if any.
pub fn brute_force_lemma(inst: &LemmaInstance) -> Option<Witness> {
    brute_force_witnesses(inst).into_iter().next()
}

/// The closed-form side: `a = d - d'` lies in the admissible interval.
/// Fails with the middle Hodge multiplicity when the hypothesis of the
/// lemma does not hold for this instance.
pub fn closed_form_lemma(inst: &LemmaInstance) -> Result<bool, crate::hodge::HodgeError> {
    let tensor =
        HodgeSet::from_params(inst.params()).tensor(&HodgeSet::from_params(inst.params_prime()));
    let p_mu = tensor.min_p_above_middle()?;
    let total = inst.params().motivic_weight() + inst.params_prime().motivic_weight();
    let interval = admissible_interval(total, p_mu, inst.block().total() as i64);
    Ok(interval.contains(inst.a_mu()))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "AGREE_TRUE")]
    AgreeTrue,
    #[serde(rename = "AGREE_FALSE")]
    AgreeFalse,
    #[serde(rename = "DISCREPANCY")]
    Discrepancy,
    #[serde(rename = "HYPOTHESIS_FAIL")]
    HypothesisFail,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::AgreeTrue => "AGREE_TRUE",
            Verdict::AgreeFalse => "AGREE_FALSE",
            Verdict::Discrepancy => "DISCREPANCY",
            Verdict::HypothesisFail => "HYPOTHESIS_FAIL",
        };
        write!(f, "{s}")
    }
}

/// Everything derived from an instance. Fields depending on the invariant
/// `p` are absent when the middle Hodge number is nonzero.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Derived {
    pub a: Vec<i64>,
    pub a_prime: Vec<i64>,
    pub motivic_weight: i64,
    pub motivic_weight_prime: i64,
    pub total_weight: i64,
    pub d: HalfInt,
    pub d_prime: HalfInt,
    pub a_mu: HalfInt,
    pub hodge: HodgeSet,
    pub hodge_prime: HodgeSet,
    pub hodge_tensor: HodgeSet,
    pub middle_hodge_number: u64,
    pub p_mu: Option<i64>,
    pub interval: Option<AdmissibleInterval>,
    pub critical_coh: Option<Vec<i64>>,
    pub critical_automorphic: Option<Vec<HalfInt>>,
    pub nu_zero: Option<HalfInt>,
    pub nu_zero_is_integer: Option<bool>,
    pub nu_zero_automorphic: Option<HalfInt>,
    pub nu_zero_pair_critical: Option<bool>,
    pub ratio_statements: Option<Vec<RatioStatement>>,
}

/// The per-instance record produced by [`verify_instance`].
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lambda: Weight,
    pub lambda_prime: Weight,
    pub n: usize,
    pub n_prime: usize,
    pub verdict: Verdict,
    pub closed_form: Option<bool>,
    pub brute_force: bool,
    pub witness: Option<Witness>,
    pub witness_count: usize,
    pub middle_hodge_ok: bool,
    pub derived: Derived,
}

/// Runs the hypothesis check, both decision procedures and all derived
/// quantities, then classifies. Every failure mode is a verdict; nothing
/// here returns an error.
pub fn verify_instance(inst: &LemmaInstance) -> LemmaReport {
    verify_instance_among(&middle_length_reps(inst.block()), inst)
}

/// As [`verify_instance`], with the representative slice supplied by the
/// caller; sweeps enumerate it once per orbit instead of once per twist.
fn verify_instance_among(reps: &[Perm], inst: &LemmaInstance) -> LemmaReport {
    let params = inst.params();
    let params_prime = inst.params_prime();
    let hodge = HodgeSet::from_params(params);
    let hodge_prime = HodgeSet::from_params(params_prime);
    let tensor = hodge.tensor(&hodge_prime);
    let middle = tensor.middle_multiplicity();
    let total = params.motivic_weight() + params_prime.motivic_weight();
    let degree = inst.block().total() as i64;
    let a_mu = inst.a_mu();

    let witnesses = witnesses_among(reps, inst);
    let brute_force = !witnesses.is_empty();

    let mut derived = Derived {
        a: params.a().to_vec(),
        a_prime: params_prime.a().to_vec(),
        motivic_weight: params.motivic_weight(),
        motivic_weight_prime: params_prime.motivic_weight(),
        total_weight: total,
        d: params.d(),
        d_prime: params_prime.d(),
        a_mu,
        hodge,
        hodge_prime,
        hodge_tensor: tensor.clone(),
        middle_hodge_number: middle,
        p_mu: None,
        interval: None,
        critical_coh: None,
        critical_automorphic: None,
        nu_zero: None,
        nu_zero_is_integer: None,
        nu_zero_automorphic: None,
        nu_zero_pair_critical: None,
        ratio_statements: None,
    };

    let (verdict, closed_form) = match tensor.min_p_above_middle() {
        Err(crate::hodge::HodgeError::MiddleNonzero(_)) => (Verdict::HypothesisFail, None),
        Err(e) => unreachable!("tensor sets of valid parameters always contain (w+w', 0): {e}"),
        Ok(p_mu) => {
            let cd = CriticalData::new(p_mu, total, a_mu, degree)
                .expect("p is above the middle by construction and N is odd >= 3");
            let interval = admissible_interval(total, p_mu, degree);
            let closed = interval.contains(a_mu);
            let coh = cd.critical_set_coh();
            let automorphic = cd
                .critical_set_automorphic()
                .expect("validated weights have consistent parities");
            let nu_zero = cd.nu_zero();
            let nu_zero_int = nu_zero.as_integer();
            derived.p_mu = Some(p_mu);
            derived.interval = Some(interval);
            derived.nu_zero = Some(nu_zero);
            derived.nu_zero_is_integer = Some(nu_zero_int.is_some());
            derived.nu_zero_automorphic = nu_zero_int.map(|s| {
                cd.to_automorphic(s)
                    .expect("validated weights have consistent parities")
            });
            if closed {
                derived.nu_zero_pair_critical = Some(match nu_zero_int {
                    Some(s) => coh.contains(&s) && coh.contains(&(s + 1)),
                    None => false,
                });
            }
            derived.ratio_statements = Some(
                cd.ratio_statements()
                    .expect("validated weights have consistent parities"),
            );
            derived.critical_coh = Some(coh);
            derived.critical_automorphic = Some(automorphic);
            let verdict = if closed == brute_force {
                if closed {
                    Verdict::AgreeTrue
                } else {
                    Verdict::AgreeFalse
                }
            } else {
                Verdict::Discrepancy
            };
            (verdict, Some(closed))
        }
    };

    LemmaReport {
        lambda: inst.lambda().clone(),
        lambda_prime: inst.lambda_prime().clone(),
        n: inst.block().n(),
        n_prime: inst.block().n_prime(),
        verdict,
        closed_form,
        brute_force,
        witness: witnesses.first().cloned(),
        witness_count: witnesses.len(),
        middle_hodge_ok: middle == 0,
        derived,
    }
}

/// How the determinant twists applied to the first weight are chosen.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum TwistRange {
    /// Twist exponents `lo..=hi` applied verbatim.
    Explicit { lo: i64, hi: i64 },
    /// Per orbit, twists chosen so that the offset `a` walks the whole
    /// admissible interval plus `margin` extra steps on each side. Orbits
    /// whose hypothesis fails get the single untwisted instance.
    CoverInterval { margin: i64 },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verbosity {
    Summary,
    Full,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SweepConfig {
    pub block_pairs: Vec<(usize, usize)>,
    pub entry_bound: i64,
    pub twists: TwistRange,
    pub verbosity: Verbosity,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid sweep config: {0}")]
pub struct InvalidConfig(pub String);

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct VerdictCounts {
    pub agree_true: u64,
    pub agree_false: u64,
    pub discrepancy: u64,
    pub hypothesis_fail: u64,
}

impl VerdictCounts {
    pub fn record(&mut self, v: Verdict) {
        match v {
            Verdict::AgreeTrue => self.agree_true += 1,
            Verdict::AgreeFalse => self.agree_false += 1,
            Verdict::Discrepancy => self.discrepancy += 1,
            Verdict::HypothesisFail => self.hypothesis_fail += 1,
        }
    }

    pub fn merge(&mut self, other: &VerdictCounts) {
        self.agree_true += other.agree_true;
        self.agree_false += other.agree_false;
        self.discrepancy += other.discrepancy;
        self.hypothesis_fail += other.hypothesis_fail;
    }

    pub fn total(&self) -> u64 {
        self.agree_true + self.agree_false + self.discrepancy + self.hypothesis_fail
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BlockSummary {
    pub n: usize,
    pub n_prime: usize,
    pub orbits: u64,
    pub instances: u64,
    pub counts: VerdictCounts,
}

/// The aggregate result of a sweep. Identical configs produce identical
/// reports byte for byte, independent of the parallelism degree: instances
/// are evaluated in a fixed canonical order and merged positionally.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub counts: VerdictCounts,
    pub block_summaries: Vec<BlockSummary>,
    /// Violations of the successive-pair coverage law on swept orbits;
    /// expected empty, and worth as much attention as a discrepancy if not.
    pub coverage_failures: Vec<String>,
    pub discrepancies: Vec<LemmaReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instances: Option<Vec<LemmaReport>>,
}

/// Palindromic gap vectors `(a_1, ..., a_{n-1})` with every `a_i >= 2`
/// whose canonical weight (last entry zero) has all entries within the
/// bound; ascending lexicographic order.
pub fn canonical_gap_vectors(n: usize, entry_bound: i64) -> Vec<Vec<i64>> {
    let gaps_len = n - 1;
    if gaps_len == 0 {
        return vec![Vec::new()];
    }
    let free = gaps_len.div_ceil(2);
    let mut out = Vec::new();
    let mut acc: Vec<i64> = Vec::with_capacity(free);

    fn recurse(
        pos: usize,
        free: usize,
        gaps_len: usize,
        budget: i64,
        acc: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if pos == free {
            let full: Vec<i64> = (0..gaps_len)
                .map(|i| acc[i.min(gaps_len - 1 - i)])
                .collect();
            out.push(full);
            return;
        }
        let mult = if pos == gaps_len - 1 - pos { 1 } else { 2 };
        let mut a = 2i64;
        while (a - 1) * mult <= budget {
            acc.push(a);
            recurse(pos + 1, free, gaps_len, budget - (a - 1) * mult, acc, out);
            acc.pop();
            a += 1;
        }
    }

    recurse(0, free, gaps_len, entry_bound, &mut acc, &mut out);
    out
}

/// The canonical weight of a gap vector: last entry zero, the rest
/// cumulative sums of `a_i - 1`.
pub fn canonical_weight(gaps: &[i64]) -> Weight {
    let n = gaps.len() + 1;
    let mut entries = vec![0i64; n];
    for i in (0..gaps.len()).rev() {
        entries[i] = entries[i + 1] + gaps[i] - 1;
    }
    Weight::new(entries).expect("n >= 1")
}

struct OrbitOutcome {
    reports: Vec<LemmaReport>,
    coverage_failures: Vec<String>,
}

fn twist_exponents(
    twists: TwistRange,
    canonical_a: HalfInt,
    interval: Option<AdmissibleInterval>,
) -> Vec<i64> {
    match twists {
        TwistRange::Explicit { lo, hi } => (lo..=hi).collect(),
        TwistRange::CoverInterval { margin } => match interval {
            None => vec![0],
            Some(iv) => {
                // a(twist l) = a_canonical - l; both ends land on the
                // interval grid because validated parities agree.
                debug_assert_eq!((canonical_a.twice() - iv.hi.twice()).rem_euclid(2), 0);
                let l_lo = (canonical_a.twice() - iv.hi.twice()) / 2 - margin;
                let l_hi = (canonical_a.twice() - iv.lo.twice()) / 2 + margin;
                (l_lo..=l_hi).collect()
            }
        },
    }
}

fn run_orbit(lambda_canonical: &Weight, lambda_prime: &Weight, twists: TwistRange) -> OrbitOutcome {
    let canonical = LemmaInstance::new(lambda_canonical.clone(), lambda_prime.clone())
        .expect("canonical orbit weights validate by construction");
    let reps = middle_length_reps(canonical.block());
    let canonical_report = verify_instance_among(&reps, &canonical);
    let interval = canonical_report.derived.interval;
    let exponents = twist_exponents(twists, canonical.a_mu(), interval);

    let reports: Vec<LemmaReport> = exponents
        .iter()
        .map(|&l| {
            let inst = LemmaInstance::new(lambda_canonical.twist_by_det(l), lambda_prime.clone())
                .expect("determinant twists preserve validity");
            verify_instance_among(&reps, &inst)
        })
        .collect();

    let mut failures = Vec::new();
    if let Some(interval) = interval {
        check_orbit_coverage(&canonical, interval, &reports, &mut failures);
    }
    OrbitOutcome {
        reports,
        coverage_failures: failures,
    }
}

/// The coverage law on one orbit: when the swept twists include the whole
/// admissible interval and the two procedures agree throughout, the
/// positive verdicts sit exactly on the interval, and the evaluation points
/// `(nu0, nu0 + 1)` walk the adjacent critical pairs bijectively, top pair
/// at the lower bound, bottom pair at the upper.
fn check_orbit_coverage(
    canonical: &LemmaInstance,
    interval: AdmissibleInterval,
    reports: &[LemmaReport],
    failures: &mut Vec<String>,
) {
    let tag = || {
        format!(
            "orbit λ={} λ'={}",
            canonical.lambda(),
            canonical.lambda_prime()
        )
    };
    if reports.iter().any(|r| r.verdict == Verdict::Discrepancy) {
        return; // the discrepancy itself is already reported in full
    }
    for r in reports {
        if r.closed_form == Some(true) {
            if r.derived.nu_zero_pair_critical != Some(true) {
                failures.push(format!(
                    "{}: a={} admissible but (ν₀, ν₀+1) not adjacent critical integers",
                    tag(),
                    r.derived.a_mu
                ));
            }
            let expected = HalfInt::half_of(-(canonical.block().total() as i64));
            if r.derived.nu_zero_automorphic != Some(expected) {
                failures.push(format!(
                    "{}: a={} admissible but ν₀ does not map to -N/2",
                    tag(),
                    r.derived.a_mu
                ));
            }
        }
    }
    let swept_a: Vec<HalfInt> = reports.iter().map(|r| r.derived.a_mu).collect();
    let covers_interval =
        interval.is_empty() || interval.values().iter().all(|v| swept_a.contains(v));
    if !covers_interval {
        return; // partial sweeps cannot certify the bijection
    }
    let mut true_a: Vec<HalfInt> = reports
        .iter()
        .filter(|r| r.verdict == Verdict::AgreeTrue)
        .map(|r| r.derived.a_mu)
        .collect();
    true_a.sort();
    true_a.dedup();
    if true_a != interval.values() {
        failures.push(format!(
            "{}: positive verdicts at {:?} do not match the admissible interval {}",
            tag(),
            true_a,
            interval
        ));
        return;
    }
    let mut nu0s: Vec<i64> = reports
        .iter()
        .filter(|r| r.verdict == Verdict::AgreeTrue)
        .filter_map(|r| r.derived.nu_zero.and_then(|v| v.as_integer()))
        .collect();
    nu0s.sort();
    nu0s.dedup();
    if let (Some(p_mu), Some(total)) = (
        reports.first().and_then(|r| r.derived.p_mu),
        reports.first().map(|r| r.derived.total_weight),
    ) {
        let expected: Vec<i64> = (total + 1 - p_mu..=p_mu - 1).collect();
        if nu0s != expected {
            failures.push(format!(
                "{}: ν₀ values {:?} do not cover the adjacent pairs {:?}",
                tag(),
                nu0s,
                expected
            ));
        }
    }
}

/// Enumerates every canonical orbit for each block pair, applies the
/// configured twists, verifies each instance and aggregates. Orbit
/// evaluation may run in parallel; the output order is canonical either
/// way.
pub fn sweep(config: &SweepConfig) -> Result<SweepReport, InvalidConfig> {
    if config.block_pairs.is_empty() {
        return Err(InvalidConfig("no block pairs given".into()));
    }
    if config.entry_bound < 1 {
        return Err(InvalidConfig(format!(
            "entry bound must be at least 1, got {}",
            config.entry_bound
        )));
    }
    match config.twists {
        TwistRange::Explicit { lo, hi } if lo > hi => {
            return Err(InvalidConfig(format!("empty twist range {lo}..{hi}")));
        }
        TwistRange::CoverInterval { margin } if margin < 0 => {
            return Err(InvalidConfig(format!("negative twist margin {margin}")));
        }
        _ => {}
    }

    // Plan all orbits up front, in canonical order.
    let mut orbits: Vec<(usize, Weight, Weight)> = Vec::new();
    let mut pair_orbit_counts: Vec<(BlockPair, u64)> = Vec::new();
    for (pair_idx, &(n, n_prime)) in config.block_pairs.iter().enumerate() {
        let block = BlockPair::new(n, n_prime).map_err(|e| InvalidConfig(e.to_string()))?;
        let gaps = canonical_gap_vectors(n, config.entry_bound);
        let gaps_prime = canonical_gap_vectors(n_prime, config.entry_bound);
        if gaps.is_empty() || gaps_prime.is_empty() {
            return Err(InvalidConfig(format!(
                "empty weight range for block pair ({n},{n_prime}) within entry bound {}",
                config.entry_bound
            )));
        }
        let mut count = 0u64;
        for g in &gaps {
            let lambda = canonical_weight(g);
            for gp in &gaps_prime {
                let lambda_prime = canonical_weight(gp);
                orbits.push((pair_idx, lambda.clone(), lambda_prime));
                count += 1;
            }
        }
        pair_orbit_counts.push((block, count));
    }

    let outcomes: Vec<OrbitOutcome> = orbits
        .par_iter()
        .map(|(_, lambda, lambda_prime)| run_orbit(lambda, lambda_prime, config.twists))
        .collect();

    let mut counts = VerdictCounts::default();
    let mut block_summaries: Vec<BlockSummary> = pair_orbit_counts
        .iter()
        .map(|(block, orbit_count)| BlockSummary {
            n: block.n(),
            n_prime: block.n_prime(),
            orbits: *orbit_count,
            instances: 0,
            counts: VerdictCounts::default(),
        })
        .collect();
    let mut coverage_failures = Vec::new();
    let mut discrepancies = Vec::new();
    let mut instances = Vec::new();
    for ((pair_idx, _, _), outcome) in orbits.iter().zip(outcomes) {
        for report in &outcome.reports {
            counts.record(report.verdict);
            let summary = &mut block_summaries[*pair_idx];
            summary.instances += 1;
            summary.counts.record(report.verdict);
            if report.verdict == Verdict::Discrepancy {
                discrepancies.push(report.clone());
            }
        }
        coverage_failures.extend(outcome.coverage_failures);
        instances.extend(outcome.reports);
    }

    Ok(SweepReport {
        config: config.clone(),
        counts,
        block_summaries,
        coverage_failures,
        discrepancies,
        instances: match config.verbosity {
            Verbosity::Full => Some(instances),
            Verbosity::Summary => None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weight(entries: &[i64]) -> Weight {
        Weight::new(entries.to_vec()).unwrap()
    }

    fn instance(l: &[i64], lp: &[i64]) -> LemmaInstance {
        LemmaInstance::new(weight(l), weight(lp)).unwrap()
    }

    #[test]
    fn bottom_degree_formula() {
        assert_eq!(bottom_degree(2), 1);
        assert_eq!(bottom_degree(1), 0);
        assert_eq!(bottom_degree(3), 2);
        assert_eq!(bottom_degree(4), 4);
        assert_eq!(bottom_degree(5), 6);
    }

    #[test]
    fn degree_identity_examples() {
        for (n, np) in [(2, 1), (2, 3), (4, 3)] {
            let b = BlockPair::new(n, np).unwrap();
            assert!(degree_identity(&b));
        }
        // spot values: b_3 = 2 = 1 + 0 + 1, b_5 = 6 = 1 + 2 + 3, b_7 = 12 = 4 + 2 + 6
        assert_eq!(bottom_degree(3), 2);
        assert_eq!(bottom_degree(5), 6);
        assert_eq!(bottom_degree(7), 12);
    }

    #[test]
    fn instance_validation() {
        assert!(LemmaInstance::new(weight(&[1, 0]), weight(&[2])).is_ok());
        // n' even is rejected at the block level
        assert!(matches!(
            LemmaInstance::new(weight(&[1, 0]), weight(&[1, 0])),
            Err(InstanceError::Block(_))
        ));
        // invalid first weight
        assert!(matches!(
            LemmaInstance::new(weight(&[0, 0]), weight(&[2])),
            Err(InstanceError::Lambda(_))
        ));
    }

    #[test]
    fn brute_force_worked_example() {
        let inst = instance(&[1, 0], &[2]);
        let witnesses = brute_force_witnesses(&inst);
        assert_eq!(witnesses.len(), 1);
        let w = &witnesses[0];
        assert_eq!(w.w, Perm::from_images(vec![1, 3, 2]).unwrap());
        assert_eq!(w.length, 1);
        assert_eq!(w.mu_tilde, weight(&[1, 1, 1]));
        // the defining equation, re-checked from scratch
        assert_eq!(w.w.dot_action(&w.mu_tilde), inst.mu());
    }

    #[test]
    fn brute_force_negative_examples() {
        assert!(brute_force_lemma(&instance(&[1, 0], &[3])).is_none());
        assert!(brute_force_lemma(&instance(&[1, 0], &[1])).is_none());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_lemma(&instance(&[1, 0], &[2])), Ok(true));
        assert_eq!(closed_form_lemma(&instance(&[1, 0], &[3])), Ok(false));
        assert_eq!(closed_form_lemma(&instance(&[1, 0], &[1])), Ok(false));
    }

    #[test]
    fn verify_agree_true() {
        let report = verify_instance(&instance(&[1, 0], &[2]));
        assert_eq!(report.verdict, Verdict::AgreeTrue);
        assert_eq!(report.closed_form, Some(true));
        assert!(report.brute_force);
        assert_eq!(report.witness_count, 1);
        assert!(report.middle_hodge_ok);
        let d = &report.derived;
        assert_eq!(d.p_mu, Some(2));
        assert_eq!(d.a_mu, HalfInt::half_of(-3));
        assert_eq!(d.critical_coh.as_deref(), Some(&[2, 1][..]));
        assert_eq!(d.nu_zero, Some(HalfInt::from_int(1)));
        assert_eq!(d.nu_zero_automorphic, Some(HalfInt::half_of(-3)));
        assert_eq!(d.nu_zero_pair_critical, Some(true));
        assert_eq!(d.ratio_statements.as_ref().unwrap().len(), 1);
    }

    #[test]
    fn verify_agree_false() {
        let report = verify_instance(&instance(&[1, 0], &[3]));
        assert_eq!(report.verdict, Verdict::AgreeFalse);
        assert_eq!(report.closed_form, Some(false));
        assert!(!report.brute_force);
        assert!(report.witness.is_none());
    }

    #[test]
    fn verify_hypothesis_fail() {
        // a = (4) against a' = (2,2): the tensor picks up the middle pair
        // (4,4) with multiplicity two, so the lemma hypothesis fails.
        let report = verify_instance(&instance(&[3, 0], &[2, 1, 0]));
        assert_eq!(report.verdict, Verdict::HypothesisFail);
        assert_eq!(report.closed_form, None);
        assert!(!report.middle_hodge_ok);
        assert_eq!(report.derived.middle_hodge_number, 2);
        assert_eq!(report.derived.p_mu, None);
    }

    #[test]
    fn canonical_gap_vectors_small() {
        assert_eq!(canonical_gap_vectors(1, 5), vec![Vec::<i64>::new()]);
        assert_eq!(canonical_gap_vectors(2, 3), vec![vec![2], vec![3], vec![4]]);
        // n = 3: palindromes (b, b) with 2(b-1) <= 4
        assert_eq!(canonical_gap_vectors(3, 4), vec![vec![2, 2], vec![3, 3]]);
        // n = 4: (a1, a2, a1) with 2(a1-1) + (a2-1) <= 4
        assert_eq!(
            canonical_gap_vectors(4, 4),
            vec![vec![2, 2, 2], vec![2, 3, 2]]
        );
        assert!(canonical_gap_vectors(4, 2).is_empty());
    }

    #[test]
    fn canonical_weight_from_gaps() {
        assert_eq!(canonical_weight(&[]), weight(&[0]));
        assert_eq!(canonical_weight(&[2]), weight(&[1, 0]));
        assert_eq!(canonical_weight(&[3, 3]), weight(&[4, 2, 0]));
        assert_eq!(canonical_weight(&[2, 3, 2]), weight(&[4, 3, 1, 0]));
        for gaps in canonical_gap_vectors(4, 9) {
            let w = canonical_weight(&gaps);
            let p = w.validate().unwrap();
            assert_eq!(p.a(), &gaps[..]);
        }
    }

    #[test]
    fn sweep_2_1_has_no_discrepancies() {
        let config = SweepConfig {
            block_pairs: vec![(2, 1)],
            entry_bound: 6,
            twists: TwistRange::CoverInterval { margin: 2 },
            verbosity: Verbosity::Full,
        };
        let report = sweep(&config).unwrap();
        assert_eq!(report.counts.discrepancy, 0);
        assert_eq!(report.counts.hypothesis_fail, 0);
        assert!(report.coverage_failures.is_empty());
        // 6 orbits (a1 = 2..7); each contributes count = a1 - 1 positives
        // and 2 * margin negatives
        let expected_true: u64 = (2..=7).map(|a1| (a1 - 1) as u64).sum();
        assert_eq!(report.counts.agree_true, expected_true);
        assert_eq!(report.counts.agree_false, 6 * 4);
        assert_eq!(report.block_summaries.len(), 1);
        assert_eq!(report.block_summaries[0].orbits, 6);
        let instances = report.instances.as_ref().unwrap();
        assert_eq!(instances.len() as u64, report.counts.total());
    }

    #[test]
    fn sweep_2_5_runs_clean() {
        let report = sweep(&SweepConfig {
            block_pairs: vec![(2, 5)],
            entry_bound: 4,
            twists: TwistRange::CoverInterval { margin: 2 },
            verbosity: Verbosity::Summary,
        })
        .unwrap();
        assert_eq!(report.counts.discrepancy, 0);
        assert!(report.coverage_failures.is_empty());
        assert!(report.counts.total() > 0);
    }

    #[test]
    fn sweep_config_validation() {
        let base = SweepConfig {
            block_pairs: vec![(2, 1)],
            entry_bound: 6,
            twists: TwistRange::CoverInterval { margin: 2 },
            verbosity: Verbosity::Summary,
        };
        let mut c = base.clone();
        c.entry_bound = 0;
        assert!(sweep(&c).is_err());
        let mut c = base.clone();
        c.block_pairs = vec![];
        assert!(sweep(&c).is_err());
        let mut c = base.clone();
        c.block_pairs = vec![(3, 1)];
        assert!(sweep(&c).is_err());
        let mut c = base.clone();
        c.twists = TwistRange::Explicit { lo: 3, hi: 1 };
        assert!(sweep(&c).is_err());
        // bound too small to admit any GL_4 weight
        let mut c = base.clone();
        c.block_pairs = vec![(4, 1)];
        c.entry_bound = 2;
        assert!(sweep(&c).is_err());
    }

    #[test]
    fn sweep_is_deterministic() {
        let config = SweepConfig {
            block_pairs: vec![(2, 3), (2, 1)],
            entry_bound: 4,
            twists: TwistRange::CoverInterval { margin: 1 },
            verbosity: Verbosity::Full,
        };
        let a = serde_json::to_string(&sweep(&config).unwrap()).unwrap();
        let b = serde_json::to_string(&sweep(&config).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn twist_transport() {
        // twisting lambda by l shifts a by -l and transports both verdicts
        // rigidly; the cohomological critical set is unchanged and the
        // automorphic one shifts by -l
        let base = instance(&[1, 0], &[2]);
        let base_report = verify_instance(&base);
        let interval = base_report.derived.interval.unwrap();
        for l in -4i64..=4 {
            let inst = instance(weight(&[1, 0]).twist_by_det(l).entries(), &[2]);
            let report = verify_instance(&inst);
            assert_eq!(report.derived.a_mu, base.a_mu() - l);
            assert_eq!(report.derived.interval, Some(interval));
            assert_eq!(
                report.derived.critical_coh,
                base_report.derived.critical_coh
            );
            let shifted: Vec<HalfInt> = base_report
                .derived
                .critical_automorphic
                .as_ref()
                .unwrap()
                .iter()
                .map(|&m| m - l)
                .collect();
            assert_eq!(report.derived.critical_automorphic, Some(shifted));
            assert_eq!(report.closed_form, Some(interval.contains(base.a_mu() - l)));
            assert_eq!(Some(report.brute_force), report.closed_form);
        }
    }

    #[test]
    fn degree_identity_up_to_n_99() {
        for n in (2..=50usize).step_by(2) {
            for n_prime in (1..=49usize).step_by(2) {
                let b = BlockPair::new(n, n_prime).unwrap();
                assert!(degree_identity(&b));
            }
        }
    }
}
