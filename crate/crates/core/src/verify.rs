//! Sampling-based checks of the orbit-type theorems: expected P2 tables, real-point
//! counts, P3 necessary conditions and independence of the orbit type from the section.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::Serialize;
use thiserror::Error;

use crate::fixedpoints::Certificate;
use crate::group::{OrbitType, Space, SubgroupClass, SubgroupKind, SymGroup};
use crate::poly::{random_symmetric_with, MultiPoly};
use crate::solver::{solve_p2, solve_p3, special_obstruction, IntersectionReport, SolveError, SolveOptions};

/// Coefficients of random symmetric instances lie in `[-COEFF_BOUND, COEFF_BOUND]`.
pub const COEFF_BOUND: i64 = 10;
/// Non-transverse or failed trials are resampled up to this multiple of the budget.
pub const RESAMPLE_FACTOR: usize = 5;
/// Default cap on `d e` for P2 tables.
pub const P2_PRODUCT_CAP: u32 = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("the report is not transverse")]
    NotTransverse,
    #[error("the input polynomials have non-real coefficients")]
    NonRealInputs,
    #[error("the report lives in {0}")]
    WrongSpace(Space),
    #[error("degree product {product} exceeds the cap {cap}")]
    DegreeCap { product: u64, cap: u64 },
    #[error("degrees must be positive")]
    ZeroDegree,
}

/// Expected orbit type of a transverse intersection in P2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpectedP2 {
    Type(OrbitType),
    /// No transverse pair of symmetric curves has these degrees.
    Impossible,
}

impl std::fmt::Display for ExpectedP2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Type(t) => write!(f, "{t}"),
            Self::Impossible => write!(f, "impossible"),
        }
    }
}

fn s3(kind: SubgroupKind) -> SubgroupClass {
    SubgroupClass::new(SymGroup::S3, kind)
}

/// Orbit type of `V(f, g)` for transverse symmetric curves of degrees `d`, `e`,
/// determined by `d e mod 6`.
pub fn expected_orbit_type_p2(d: u32, e: u32) -> ExpectedP2 {
    let n = d as usize * e as usize;
    let k = n / 6;
    let (c2, c3) = match n % 6 {
        0 => (0, 0),
        2 => (0, 1),
        3 => (1, 0),
        5 => (1, 1),
        _ => return ExpectedP2::Impossible,
    };
    ExpectedP2::Type(OrbitType::from_terms(
        SymGroup::S3,
        [(s3(SubgroupKind::Trivial), k), (s3(SubgroupKind::C2), c2), (s3(SubgroupKind::C3), c3)],
    ))
}

/// True iff `d1 d2 d3 mod 12` is 0, 2, 6 or 8.
pub fn p3_degree_congruence(d1: u32, d2: u32, d3: u32) -> bool {
    let n = d1 as u64 * d2 as u64 * d3 as u64;
    matches!(n % 12, 0 | 2 | 6 | 8)
}

/// Outcome of a single necessary-condition check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub passed: bool,
    pub reasons: Vec<String>,
}

impl CheckResult {
    fn from_reasons(reasons: Vec<String>) -> Self {
        Self { passed: reasons.is_empty(), reasons }
    }
}

/// Admissible real-point counts of a transverse real intersection in P2.
pub fn allowed_real_counts_p2(de: u64) -> Vec<u64> {
    match de % 6 {
        3 | 5 => (0..).map(|k| 3 + 6 * k).take_while(|&r| r - 3 < de).collect(),
        0 | 2 => (0..).map(|k| 6 * k).take_while(|&r| r <= de).collect(),
        _ => Vec::new(),
    }
}

/// Real-point count of a transverse P2 report with real inputs.
pub fn check_real_count_p2(report: &IntersectionReport) -> Result<CheckResult, VerifyError> {
    if report.space != Space::P2 {
        return Err(VerifyError::WrongSpace(report.space));
    }
    if !report.transverse {
        return Err(VerifyError::NotTransverse);
    }
    if !report.polynomials.iter().all(MultiPoly::has_real_coefficients) {
        return Err(VerifyError::NonRealInputs);
    }
    let allowed = allowed_real_counts_p2(report.bezout);
    let mut reasons = Vec::new();
    if !allowed.contains(&(report.real_count as u64)) {
        reasons.push(format!("{} real points, allowed {:?}", report.real_count, allowed));
    }
    reasons.extend(real_orbit_reasons(report));
    Ok(CheckResult::from_reasons(reasons))
}

/// Every orbit must be entirely real or entirely non-real.
fn real_orbit_reasons(report: &IntersectionReport) -> Vec<String> {
    let mut reasons = Vec::new();
    let orbits = report.points.iter().map(|p| p.orbit_id).max().map_or(0, |m| m + 1);
    for id in 0..orbits {
        let reals: Vec<bool> = report.points.iter().filter(|p| p.orbit_id == id).map(|p| p.is_real).collect();
        if reals.iter().any(|&r| r) && !reals.iter().all(|&r| r) {
            reasons.push(format!("orbit {id} is partly real"));
        }
    }
    reasons
}

/// Necessary conditions on a transverse P3 intersection: admissible stabilizers,
/// uniqueness of the C4 and C3 orbits, real count a multiple of 12, and real
/// points only in orbits with trivial or C2e stabilizer.
pub fn check_p3_constraints(report: &IntersectionReport) -> Result<CheckResult, VerifyError> {
    if report.space != Space::P3 {
        return Err(VerifyError::WrongSpace(report.space));
    }
    if !report.transverse {
        return Err(VerifyError::NotTransverse);
    }
    let allowed = [SubgroupKind::Trivial, SubgroupKind::C2Even, SubgroupKind::C3, SubgroupKind::C4];
    let mut reasons = Vec::new();
    for (class, k) in report.orbit_type.terms() {
        if !allowed.contains(&class.kind) {
            reasons.push(format!("{k} orbit(s) with inadmissible stabilizer {class}"));
        }
    }
    for kind in [SubgroupKind::C4, SubgroupKind::C3] {
        let k = report.orbit_type.multiplicity(&SubgroupClass::new(SymGroup::S4, kind));
        if k > 1 {
            reasons.push(format!("{k} orbits of type [S4/{}]", SubgroupClass::new(SymGroup::S4, kind)));
        }
    }
    if !report.real_count.is_multiple_of(12) {
        reasons.push(format!("{} real points, not a multiple of 12", report.real_count));
    }
    for p in report.points.iter().filter(|p| p.is_real) {
        if !matches!(p.stabilizer.kind, SubgroupKind::Trivial | SubgroupKind::C2Even) {
            reasons.push(format!("real point with stabilizer {}", p.stabilizer));
            break;
        }
    }
    reasons.extend(real_orbit_reasons(report));
    let product: u64 = report.degrees.iter().map(|&d| d as u64).product();
    if !matches!(product % 12, 0 | 2 | 6 | 8) {
        reasons.push(format!("transverse intersection with degree product {product}"));
    }
    Ok(CheckResult::from_reasons(reasons))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
            Self::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// The trial agrees with the statement under test.
    Confirmed,
    /// The trial contradicts it.
    Contradiction,
    /// The trial does not meet the hypotheses (e.g. not transverse) and was resampled.
    Rejected,
    /// No instance satisfying the hypotheses exists (e.g. two symmetric lines).
    Vacuous,
    /// The solver failed; recorded, not thrown.
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub index: usize,
    /// The random instance, as monomial-basis strings.
    pub instance: Vec<String>,
    pub outcome: Outcome,
    pub transverse: Option<bool>,
    pub orbit_type: Option<String>,
    pub real_count: Option<usize>,
    pub complete: Option<bool>,
    pub certificate: Option<Certificate>,
    pub detail: Option<String>,
}

impl TrialRecord {
    fn new(index: usize, fs: &[MultiPoly]) -> Self {
        Self {
            index,
            instance: fs.iter().map(|f| f.to_string()).collect(),
            outcome: Outcome::Error,
            transverse: None,
            orbit_type: None,
            real_count: None,
            complete: None,
            certificate: None,
            detail: None,
        }
    }

    fn with_report(mut self, r: &IntersectionReport) -> Self {
        self.transverse = Some(r.transverse);
        self.orbit_type = Some(r.orbit_type.to_string());
        self.real_count = Some(r.real_count);
        self.complete = Some(r.complete);
        self.certificate = r.obstruction.clone();
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunParams {
    pub space: Space,
    pub degrees: Vec<u32>,
    pub trials: usize,
    pub seed: u64,
    pub precision: u32,
    pub expected: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub confirmed: usize,
    pub contradictions: usize,
    pub rejected: usize,
    pub vacuous: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationRun {
    pub theorem: String,
    pub params: RunParams,
    pub trials: Vec<TrialRecord>,
    pub verdict: Verdict,
    pub counts: Counts,
    /// Extra context for the verdict (e.g. vacuous pass).
    pub note: Option<String>,
}

impl VerificationRun {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("run serializes")
    }

    /// Orbit types of the confirmed trials.
    pub fn confirmed_orbit_types(&self) -> Vec<&str> {
        self.trials
            .iter()
            .filter(|t| t.outcome == Outcome::Confirmed)
            .filter_map(|t| t.orbit_type.as_deref())
            .collect()
    }

    pub fn has_numerical_errors(&self) -> bool {
        self.counts.errors > 0
    }
}

fn count(trials: &[TrialRecord]) -> Counts {
    let mut c = Counts::default();
    for t in trials {
        match t.outcome {
            Outcome::Confirmed => c.confirmed += 1,
            Outcome::Contradiction => c.contradictions += 1,
            Outcome::Rejected => c.rejected += 1,
            Outcome::Vacuous => c.vacuous += 1,
            Outcome::Error => c.errors += 1,
        }
    }
    c
}

/// Pass needs no contradiction and `needed` confirmations (or only vacuous trials);
/// inconclusive when the hypotheses were never met.
fn verdict(c: &Counts, needed: usize) -> Verdict {
    if c.contradictions > 0 {
        Verdict::Fail
    } else if c.confirmed >= needed.max(1) || (c.vacuous > 0 && c.confirmed + c.rejected + c.errors == 0) {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    }
}

/// Random symmetric instance of the given degrees for trial `index`, drawn from its
/// own ChaCha stream so trials are independent of evaluation order.
pub fn random_instance(space: Space, degrees: &[u32], seed: u64, index: usize) -> Vec<MultiPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tag = degrees.iter().fold(0u64, |acc, &d| acc * 64 + d as u64);
    rng.set_stream((tag << 24) ^ index as u64);
    degrees
        .iter()
        .map(|&d| random_symmetric_with(space.nvars(), d, &mut rng, COEFF_BOUND).to_multipoly())
        .collect()
}

fn solve(space: Space, fs: &[MultiPoly], opts: &SolveOptions) -> Result<IntersectionReport, SolveError> {
    match space {
        Space::P2 => solve_p2(&fs[0], &fs[1], opts),
        Space::P3 => solve_p3(&fs[0], &fs[1], &fs[2], opts),
    }
}

/// Runs `judge` on trial indices `0..`, in parallel batches, until `budget` trials
/// are not rejected or `RESAMPLE_FACTOR * budget` trials were drawn. Outcomes depend
/// only on the index, so the record is deterministic.
fn run_trials<F>(budget: usize, resample: bool, judge: F) -> Vec<TrialRecord>
where
    F: Fn(usize) -> TrialRecord + Sync,
{
    let limit = if resample { RESAMPLE_FACTOR * budget } else { budget };
    let mut records: Vec<TrialRecord> = Vec::new();
    let mut next = 0;
    loop {
        let accepted = records.iter().filter(|t| t.outcome != Outcome::Rejected && t.outcome != Outcome::Error).count();
        let missing = if resample { budget.saturating_sub(accepted) } else { budget - records.len() };
        if missing == 0 || next >= limit {
            break;
        }
        let batch: Vec<usize> = (next..(next + missing).min(limit)).collect();
        next += batch.len();
        records.extend(parallel_map(&batch, &judge));
    }
    records
}

fn parallel_map<F>(indices: &[usize], f: &F) -> Vec<TrialRecord>
where
    F: Fn(usize) -> TrialRecord + Sync,
{
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(indices.len()).max(1);
    let cursor = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<TrialRecord>>> = Mutex::new(vec![None; indices.len()]);
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let k = cursor.fetch_add(1, Ordering::Relaxed);
                if k >= indices.len() {
                    break;
                }
                let r = f(indices[k]);
                out.lock().expect("no poisoned lock")[k] = Some(r);
            });
        }
    });
    out.into_inner().expect("no poisoned lock").into_iter().map(|r| r.expect("trial ran")).collect()
}

fn trial_options(opts: &SolveOptions, seed: u64, index: usize) -> SolveOptions {
    SolveOptions { seed: seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15), ..opts.clone() }
}

/// Confirms the P2 orbit-type table for degrees `(d, e)` on random symmetric pairs.
/// Impossible cells need every trial non-transverse with an exact certificate;
/// otherwise every transverse trial must have the expected orbit type (and, with
/// real coefficients, an admissible real-point count).
pub fn verify_p2_table(
    d: u32,
    e: u32,
    trials: usize,
    seed: u64,
    opts: &SolveOptions,
) -> Result<VerificationRun, VerifyError> {
    if d == 0 || e == 0 {
        return Err(VerifyError::ZeroDegree);
    }
    let product = d as u64 * e as u64;
    if product > P2_PRODUCT_CAP as u64 {
        return Err(VerifyError::DegreeCap { product, cap: P2_PRODUCT_CAP as u64 });
    }
    let expected = expected_orbit_type_p2(d, e);
    let degrees = [d, e];
    let vacuous = d == 1 && e == 1;
    let judge = |index: usize| {
        let fs = random_instance(Space::P2, &degrees, seed, index);
        let mut rec = TrialRecord::new(index, &fs);
        let result = solve_p2(&fs[0], &fs[1], &trial_options(opts, seed, index));
        match (&expected, result) {
            (_, Err(SolveError::CommonFactor)) => {
                rec.outcome = if vacuous { Outcome::Vacuous } else { Outcome::Rejected };
                rec.detail = Some("common factor".into());
                if matches!(expected, ExpectedP2::Impossible) {
                    // a shared component is itself non-transverse
                    rec.certificate = special_obstruction(&fs);
                    if !vacuous && rec.certificate.is_some() {
                        rec.outcome = Outcome::Confirmed;
                    }
                }
            }
            (ExpectedP2::Impossible, Err(err)) => {
                // non-transversality is decided exactly, independent of the numerics
                rec.certificate = special_obstruction(&fs);
                rec.outcome = if rec.certificate.is_some() { Outcome::Confirmed } else { Outcome::Error };
                rec.detail = Some(err.to_string());
            }
            (_, Err(err)) => rec.detail = Some(err.to_string()),
            (ExpectedP2::Impossible, Ok(r)) => {
                rec = rec.with_report(&r);
                if rec.certificate.is_none() {
                    rec.certificate = special_obstruction(&fs);
                }
                rec.outcome = if r.transverse {
                    rec.detail = Some("transverse intersection in an impossible cell".into());
                    Outcome::Contradiction
                } else if rec.certificate.is_some() {
                    Outcome::Confirmed
                } else {
                    rec.detail = Some("non-transverse without an exact certificate".into());
                    Outcome::Contradiction
                };
            }
            (ExpectedP2::Type(t), Ok(r)) => {
                rec = rec.with_report(&r);
                if !r.transverse {
                    rec.outcome = Outcome::Rejected;
                    rec.detail = Some(format!("{:?}", r.status).to_lowercase());
                } else if r.orbit_type != *t {
                    rec.outcome = Outcome::Contradiction;
                    rec.detail = Some(format!("expected {t}"));
                } else {
                    match check_real_count_p2(&r) {
                        Ok(c) if !c.passed => {
                            rec.outcome = Outcome::Contradiction;
                            rec.detail = Some(c.reasons.join("; "));
                        }
                        _ => rec.outcome = Outcome::Confirmed,
                    }
                }
            }
        }
        rec
    };
    let impossible = matches!(expected, ExpectedP2::Impossible);
    let records = run_trials(trials, !impossible && !vacuous, judge);
    let counts = count(&records);
    let needed = if impossible { trials } else { 1 };
    let mut v = verdict(&counts, needed);
    if impossible && !vacuous && counts.confirmed < trials && v == Verdict::Pass {
        v = Verdict::Inconclusive;
    }
    Ok(VerificationRun {
        theorem: "p2-orbit-type-table".into(),
        params: RunParams {
            space: Space::P2,
            degrees: degrees.to_vec(),
            trials,
            seed,
            precision: opts.precision,
            expected: Some(expected.to_string()),
        },
        note: vacuous.then(|| "only one symmetric line exists up to scalar: vacuous pass".to_string()),
        trials: records,
        verdict: v,
        counts,
    })
}

/// All cells `1 <= d <= e` with `d e <= max_product`.
pub fn p2_cells(max_product: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for d in 1..=max_product {
        for e in d..=max_product {
            if d * e <= max_product {
                out.push((d, e));
            }
        }
    }
    out
}

/// `verify_p2_table` over every cell with `d e <= max_product`.
pub fn verify_p2_grid(
    max_product: u32,
    trials: usize,
    seed: u64,
    opts: &SolveOptions,
) -> Result<Vec<VerificationRun>, VerifyError> {
    p2_cells(max_product).into_iter().map(|(d, e)| verify_p2_table(d, e, trials, seed, opts)).collect()
}

/// All transverse trials of the given degrees share one orbit type (at least two
/// are needed); for an impossible P2 cell every trial must be non-transverse.
pub fn orbit_type_independence(
    space: Space,
    degrees: &[u32],
    trials: usize,
    seed: u64,
    opts: &SolveOptions,
) -> Result<VerificationRun, VerifyError> {
    if degrees.len() != space.nvars() - 1 || degrees.contains(&0) {
        return Err(VerifyError::ZeroDegree);
    }
    let product: u64 = degrees.iter().map(|&d| d as u64).product();
    let cap = match space {
        Space::P2 => P2_PRODUCT_CAP as u64,
        Space::P3 => opts.max_product_p3,
    };
    if product > cap {
        return Err(VerifyError::DegreeCap { product, cap });
    }
    let impossible = space == Space::P2 && product % 3 == 1;
    let vacuous = degrees.iter().filter(|&&d| d == 1).count() >= 2;
    let judge = |index: usize| {
        let fs = random_instance(space, degrees, seed, index);
        let mut rec = TrialRecord::new(index, &fs);
        match solve(space, &fs, &trial_options(opts, seed, index)) {
            Err(SolveError::CommonFactor) => {
                rec.outcome = if vacuous { Outcome::Vacuous } else { Outcome::Rejected };
                rec.detail = Some("common factor".into());
                if impossible && !vacuous {
                    rec.certificate = special_obstruction(&fs);
                    if rec.certificate.is_some() {
                        rec.outcome = Outcome::Confirmed;
                    }
                }
            }
            Err(err) => {
                rec.detail = Some(err.to_string());
                if impossible {
                    rec.certificate = special_obstruction(&fs);
                    if rec.certificate.is_some() {
                        rec.outcome = Outcome::Confirmed;
                    }
                }
            }
            Ok(r) => {
                rec = rec.with_report(&r);
                rec.outcome = match (impossible, r.transverse) {
                    (true, true) => Outcome::Contradiction,
                    (true, false) => Outcome::Confirmed,
                    (false, true) => Outcome::Confirmed,
                    (false, false) => Outcome::Rejected,
                };
            }
        }
        rec
    };
    let mut records = run_trials(trials, !impossible && !vacuous, judge);
    if !impossible {
        // the first confirmed orbit type is the reference for the others
        let reference = records.iter().find(|t| t.outcome == Outcome::Confirmed).and_then(|t| t.orbit_type.clone());
        for t in records.iter_mut().filter(|t| t.outcome == Outcome::Confirmed) {
            if t.orbit_type != reference {
                t.outcome = Outcome::Contradiction;
                t.detail = Some(format!("orbit type differs from {}", reference.as_deref().unwrap_or("?")));
            }
        }
    }
    let counts = count(&records);
    let needed = if impossible { trials } else { 2 };
    Ok(VerificationRun {
        theorem: "orbit-type-independence".into(),
        params: RunParams {
            space,
            degrees: degrees.to_vec(),
            trials,
            seed,
            precision: opts.precision,
            expected: impossible.then(|| "impossible".to_string()),
        },
        note: vacuous.then(|| "only one symmetric linear form exists up to scalar: vacuous pass".to_string()),
        verdict: verdict(&counts, needed),
        trials: records,
        counts,
    })
}

/// Necessary conditions for transverse P3 intersections on random symmetric triples.
pub fn verify_p3(degrees: &[u32; 3], trials: usize, seed: u64, opts: &SolveOptions) -> Result<VerificationRun, VerifyError> {
    if degrees.contains(&0) {
        return Err(VerifyError::ZeroDegree);
    }
    let product: u64 = degrees.iter().map(|&d| d as u64).product();
    if product > opts.max_product_p3 {
        return Err(VerifyError::DegreeCap { product, cap: opts.max_product_p3 });
    }
    let vacuous = degrees.iter().filter(|&&d| d == 1).count() >= 2;
    // a transverse intersection needs the product to be a sum of admissible orbit sizes
    let impossible = !vacuous && !p3_degree_congruence(degrees[0], degrees[1], degrees[2]);
    let judge = |index: usize| {
        let fs = random_instance(Space::P3, degrees, seed, index);
        let mut rec = TrialRecord::new(index, &fs);
        match solve(Space::P3, &fs, &trial_options(opts, seed, index)) {
            Err(SolveError::CommonFactor) => {
                rec.outcome = if vacuous { Outcome::Vacuous } else { Outcome::Rejected };
                rec.detail = Some("common factor".into());
                if impossible {
                    rec.certificate = special_obstruction(&fs);
                    if rec.certificate.is_some() {
                        rec.outcome = Outcome::Confirmed;
                    }
                }
            }
            Err(err) => {
                rec.detail = Some(err.to_string());
                if impossible {
                    rec.certificate = special_obstruction(&fs);
                    if rec.certificate.is_some() {
                        rec.outcome = Outcome::Confirmed;
                    }
                }
            }
            Ok(r) => {
                rec = rec.with_report(&r);
                if impossible && rec.certificate.is_none() {
                    rec.certificate = special_obstruction(&fs);
                }
                match check_p3_constraints(&r) {
                    Ok(c) if c.passed => rec.outcome = Outcome::Confirmed,
                    Ok(c) => {
                        rec.outcome = Outcome::Contradiction;
                        rec.detail = Some(c.reasons.join("; "));
                    }
                    Err(_) if impossible => rec.outcome = Outcome::Confirmed,
                    Err(_) => {
                        rec.outcome = Outcome::Rejected;
                        rec.detail = Some(format!("{:?}", r.status).to_lowercase());
                    }
                }
            }
        }
        rec
    };
    let records = run_trials(trials, !vacuous && !impossible, judge);
    let counts = count(&records);
    let needed = if impossible { trials } else { 1 };
    Ok(VerificationRun {
        theorem: "p3-necessary-conditions".into(),
        params: RunParams {
            space: Space::P3,
            degrees: degrees.to_vec(),
            trials,
            seed,
            precision: opts.precision,
            expected: impossible.then(|| "impossible".to_string()),
        },
        note: vacuous.then(|| "only one symmetric linear form exists up to scalar: vacuous pass".to_string()),
        verdict: verdict(&counts, needed),
        trials: records,
        counts,
    })
}

/// Sums of orbit sizes `{24, 12, 8, 6}` with at most one 6 and one 8, up to `max`.
pub fn p3_orbit_size_sums(max: u64) -> Vec<bool> {
    let mut reachable = vec![false; max as usize + 1];
    for six in 0..=1u64 {
        for eight in 0..=1u64 {
            let base = 6 * six + 8 * eight;
            let mut n = base;
            while n <= max {
                reachable[n as usize] = true;
                n += 12;
            }
        }
    }
    reachable
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, BasisMode};

    #[test]
    fn table_examples() {
        assert_eq!(expected_orbit_type_p2(1, 5).to_string(), "[S3/C3] + [S3/C2]");
        assert_eq!(expected_orbit_type_p2(2, 2), ExpectedP2::Impossible);
        assert_eq!(expected_orbit_type_p2(2, 3).to_string(), "[S3]");
        assert_eq!(expected_orbit_type_p2(4, 5).to_string(), "[S3/C3] + 3[S3]");
        assert_eq!(expected_orbit_type_p2(3, 3).to_string(), "[S3/C2] + [S3]");
    }

    #[test]
    fn congruence_examples() {
        assert!(p3_degree_congruence(1, 2, 3));
        assert!(p3_degree_congruence(2, 2, 2));
        assert!(!p3_degree_congruence(1, 1, 1));
    }

    #[test]
    fn orbit_size_sums_match_congruence() {
        let sums = p3_orbit_size_sums(120);
        for n in 1..=120u64 {
            let congruent = matches!(n % 12, 0 | 2 | 6 | 8);
            // 2 needs both small orbits, so the first such sum is 14
            assert_eq!(sums[n as usize], congruent && n != 2, "{n}");
        }
    }

    #[test]
    fn real_count_examples() {
        let opts = SolveOptions::default();
        let f = parse_poly("X+Y+Z", 3, BasisMode::Monomial).unwrap();
        let g = parse_poly("X^5+Y^5+Z^5", 3, BasisMode::Monomial).unwrap();
        let mut r = solve_p2(&f, &g, &opts).unwrap();
        assert!(check_real_count_p2(&r).unwrap().passed);
        let g2 = parse_poly("X*Y+X*Z+Y*Z", 3, BasisMode::Monomial).unwrap();
        let r2 = solve_p2(&f, &g2, &opts).unwrap();
        assert_eq!(r2.real_count, 0);
        assert!(check_real_count_p2(&r2).unwrap().passed);
        // a degree-6 report with 4 real points is impossible
        r.bezout = 6;
        r.real_count = 4;
        assert!(!check_real_count_p2(&r).unwrap().passed);
        let complex = parse_poly("X+Y+Z", 3, BasisMode::Monomial).unwrap().scale(&crate::exactnum::Cyclo12::i());
        let r3 = solve_p2(&complex, &g, &opts).unwrap();
        assert_eq!(check_real_count_p2(&r3), Err(VerifyError::NonRealInputs));
    }

    #[test]
    fn p3_constraint_examples() {
        let opts = SolveOptions::default();
        let fs = random_instance(Space::P3, &[1, 2, 3], 3, 0);
        let r = solve_p3(&fs[0], &fs[1], &fs[2], &opts).unwrap();
        assert!(check_p3_constraints(&r).unwrap().passed);
        let mut bad = r.clone();
        bad.real_count = 6;
        assert!(!check_p3_constraints(&bad).unwrap().passed);
        let mut two_c3 = r.clone();
        two_c3.orbit_type.add(SubgroupClass::new(SymGroup::S4, SubgroupKind::C3), 2);
        assert!(!check_p3_constraints(&two_c3).unwrap().passed);
    }

    #[test]
    fn small_p2_runs() {
        let opts = SolveOptions::default();
        let run = verify_p2_table(1, 5, 6, 42, &opts).unwrap();
        assert_eq!(run.verdict, Verdict::Pass, "{:?}", run.counts);
        assert!(run.confirmed_orbit_types().iter().all(|t| *t == "[S3/C3] + [S3/C2]"));
        let run = verify_p2_table(1, 1, 4, 42, &opts).unwrap();
        assert_eq!(run.verdict, Verdict::Pass, "{:?}", run.trials);
        assert_eq!(run.counts.vacuous, 4);
        assert!(run.trials.iter().all(|t| t.certificate.is_some()));
        let run = verify_p2_table(1, 4, 4, 42, &opts).unwrap();
        assert_eq!(run.verdict, Verdict::Pass, "{:?}", run.trials);
        assert!(run.trials.iter().all(|t| t.certificate.is_some()));
    }

    #[test]
    fn p3_runs() {
        let opts = SolveOptions::default();
        let run = verify_p3(&[1, 2, 3], 3, 5, &opts).unwrap();
        assert_eq!(run.verdict, Verdict::Pass);
        assert!(run.confirmed_orbit_types().iter().all(|t| *t == "[S4/C4]"));
        // 4 is not a sum of admissible orbit sizes: every trial is non-transverse
        let run = verify_p3(&[1, 2, 2], 4, 5, &opts).unwrap();
        assert_eq!(run.verdict, Verdict::Pass, "{:?}", run.trials);
        assert_eq!(run.params.expected.as_deref(), Some("impossible"));
        // symmetric quadrics span only e1^2 and e2, so no transverse triple exists
        let run = verify_p3(&[2, 2, 2], 2, 5, &opts).unwrap();
        assert_eq!(run.verdict, Verdict::Inconclusive);
        assert_eq!(run.counts.contradictions, 0);
    }

    #[test]
    fn runs_are_deterministic() {
        let opts = SolveOptions::default();
        let a = verify_p2_table(2, 3, 3, 9, &opts).unwrap().to_json();
        let b = verify_p2_table(2, 3, 3, 9, &opts).unwrap().to_json();
        assert_eq!(a, b);
    }
}
