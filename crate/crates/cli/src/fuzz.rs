//! Seeded randomized checking of every rank contract.
//!
//! Trial `i` depends only on `(config, i)`: its generator is
//! [`trial_rng`]`(seed, i)`, so reports are identical for any thread count.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use polyrank::classifiers::classify;
use polyrank::rank_theorem::{
    coprimality_witness, corollary1_check, corollary1prime_check, corollary2_check,
    corollary3_check,
};
use polyrank::{
    build_certificate, verify_certificate, DensePolynomial, Error, Field, FieldSpec, PrimeField,
    Property, Rationals, SpectralData, DEFAULT_MAX_ORDER,
};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::generators::{draw_pair, trial_rng, Generator, PairMode, Sample};
use crate::CliError;

/// Inclusive integer range written `LO..HI` (or a single `N`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InclusiveRange {
    pub lo: usize,
    pub hi: usize,
}

impl InclusiveRange {
    pub fn new(lo: usize, hi: usize) -> Self {
        InclusiveRange { lo, hi }
    }
}

impl fmt::Display for InclusiveRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for InclusiveRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("invalid range `{s}`, expected LO..HI"))
        };
        match s.split_once("..") {
            Some((lo, hi)) => Ok(InclusiveRange::new(
                num(lo)?,
                num(hi.trim_start_matches('='))?,
            )),
            None => num(s).map(|v| InclusiveRange::new(v, v)),
        }
    }
}

impl Serialize for InclusiveRange {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn display_field<S: Serializer>(spec: &FieldSpec, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(spec)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzConfig {
    #[serde(serialize_with = "display_field")]
    pub field: FieldSpec,
    pub n_range: InclusiveRange,
    pub deg_range: InclusiveRange,
    pub trials: u64,
    pub seed: u64,
    pub generators: Vec<Generator>,
    pub max_order: usize,
}

impl FuzzConfig {
    pub fn new(field: FieldSpec) -> Self {
        FuzzConfig {
            field,
            n_range: InclusiveRange::new(1, 8),
            deg_range: InclusiveRange::new(0, 6),
            trials: 100,
            seed: 0,
            generators: Generator::ALL.to_vec(),
            max_order: DEFAULT_MAX_ORDER,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.n_range.lo == 0 || self.n_range.lo > self.n_range.hi {
            return bad(format!(
                "matrix order range {} must be nonempty and start at 1 or more",
                self.n_range
            ));
        }
        if self.n_range.hi > self.max_order {
            return bad(format!(
                "matrix order {} exceeds the cap {}",
                self.n_range.hi, self.max_order
            ));
        }
        if self.deg_range.lo > self.deg_range.hi {
            return bad(format!("degree range {} is empty", self.deg_range));
        }
        if self.generators.is_empty() {
            return bad("no generators selected".into());
        }
        Ok(())
    }
}

/// One violated contract, with everything needed to replay it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub trial: u64,
    pub contract: String,
    pub inputs: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzReport {
    pub config: FuzzConfig,
    pub trials_run: u64,
    pub failures: Vec<Failure>,
    pub stats: BTreeMap<String, u64>,
    pub elapsed_ms: u128,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn stat(&self, key: &str) -> u64 {
        self.stats.get(key).copied().unwrap_or(0)
    }

    /// Failures for one contract, or for a family when `name` ends in `:`.
    pub fn failures_of(&self, name: &str) -> usize {
        self.failures
            .iter()
            .filter(|f| {
                if name.ends_with(':') {
                    f.contract.starts_with(name)
                } else {
                    f.contract == name
                }
            })
            .count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report with `elapsed_ms` removed; identical for identical configs.
    pub fn deterministic_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("elapsed_ms");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }
}

#[derive(Default)]
struct TrialLog {
    failures: Vec<Failure>,
    stats: Vec<String>,
}

struct Trial<'a, F: Field> {
    index: u64,
    inputs: Value,
    log: &'a mut TrialLog,
    _field: std::marker::PhantomData<F>,
}

impl<F: Field> Trial<'_, F> {
    fn check(&mut self, contract: &str, ok: bool) {
        if !ok {
            self.fail(contract);
        }
    }

    fn fail(&mut self, contract: &str) {
        self.log.failures.push(Failure {
            trial: self.index,
            contract: contract.to_string(),
            inputs: self.inputs.clone(),
        });
    }

    fn count(&mut self, key: impl Into<String>) {
        self.log.stats.push(key.into());
    }

    /// Unwraps `r`, logging an unexpected error as a failure of `contract`.
    fn ok<T>(&mut self, contract: &str, r: polyrank::Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.fail(&format!("{contract}: {e}"));
                None
            }
        }
    }
}

/// Splits the characteristic polynomial along the sample's bases: the
/// largest power of each base dividing it, plus the remaining cofactor.
fn char_factors<F: Field>(
    cp: &DensePolynomial<F>,
    bases: &[DensePolynomial<F>],
) -> Vec<DensePolynomial<F>> {
    let field = cp.field().clone();
    let mut rest = cp.clone();
    let mut factors = Vec::new();
    for b in bases {
        if b.is_constant() {
            continue;
        }
        let mut power = DensePolynomial::one(field.clone());
        loop {
            let (q, r) = rest.divmod(b).expect("nonzero base");
            if !r.is_zero() {
                break;
            }
            rest = q;
            power = power.mul(b).expect("same field");
        }
        if !power.is_constant() {
            factors.push(power);
        }
    }
    if !rest.is_constant() || factors.is_empty() {
        factors.push(rest);
    }
    factors
}

fn run_trial<F: Field>(field: &F, cfg: &FuzzConfig, index: u64) -> TrialLog {
    let mut rng = trial_rng(cfg.seed, index);
    let generator = cfg.generators[rand::Rng::random_range(&mut rng, 0..cfg.generators.len())];
    let n = rand::Rng::random_range(&mut rng, cfg.n_range.lo..=cfg.n_range.hi);
    let Sample {
        matrix: a,
        annihilator,
        bases,
    } = generator.draw(field, n, &mut rng);
    let (f, g, mode) = draw_pair(
        field,
        (cfg.deg_range.lo, cfg.deg_range.hi),
        &annihilator,
        &mut rng,
    );

    let mut log = TrialLog::default();
    let mut t = Trial::<F> {
        index,
        inputs: json!({
            "field": a.spec().to_string(),
            "generator": generator,
            "pair_mode": mode,
            "n": n,
            "A": a.to_string_rows(),
            "f": f.coeff_strings(),
            "g": g.coeff_strings(),
        }),
        log: &mut log,
        _field: std::marker::PhantomData,
    };
    t.count(format!("generator:{generator}"));
    t.count(format!("pair_mode:{}", pair_mode_name(mode)));

    if let Some(cert) = t.ok("certificate", build_certificate(&a, &f, &g)) {
        t.check("theorem_identity", cert.identity_holds());
        for name in verify_certificate(&cert).failed {
            t.fail(&format!("certificate:{name}"));
        }
    }

    if let (Some(c1), Some(c1p)) = (
        t.ok("corollary1", corollary1_check(&a, &f, &g)),
        t.ok("corollary1prime", corollary1prime_check(&a, &f, &g)),
    ) {
        t.check("corollary1", c1.agree());
        t.check("corollary1prime", c1p.agree());
        t.check(
            "corollary1_bridge",
            c1.lcm_annihilates == c1p.minpoly_divides,
        );
        t.count(if c1.lcm_annihilates {
            "corollary1:holds"
        } else {
            "corollary1:fails"
        });
    }

    if let Some(c2) = t.ok("corollary2_forward", corollary2_check(&a, &f, &g)) {
        t.check("corollary2_forward", c2.forward_holds());
        if c2.coprime {
            t.count("pair:coprime");
            if let Some(c3) = t.ok("corollary3", corollary3_check(&a, &f, &g)) {
                t.check("corollary3", c3.agree());
                t.count(if c3.product_zero {
                    "corollary3:holds"
                } else {
                    "corollary3:fails"
                });
            }
        } else {
            t.count("pair:non_coprime");
            match t.ok("coprimality_witness", coprimality_witness(&f, &g)) {
                Some(Some(w)) => {
                    let violated = corollary2_check(&w, &f, &g).map(|c| !c.relation_holds);
                    t.check("coprimality_witness", violated == Ok(true));
                }
                Some(None) => t.fail("coprimality_witness"),
                None => {}
            }
        }
    }

    let spectral = t.ok("spectral", SpectralData::of(&a));
    if let Some(s) = &spectral {
        for name in s.check(&a) {
            t.fail(&format!("spectral:{name}"));
        }
    }

    let odd = field.characteristic() != 2;
    for property in Property::ALL {
        let needs_odd = matches!(
            property,
            Property::Involutive | Property::Tripotent | Property::A3a5
        );
        if needs_odd && !odd {
            continue;
        }
        let factors = match (property, &spectral) {
            (Property::CharFactorRankSum, Some(s)) => char_factors(&s.char_poly, &bases),
            (Property::CharFactorRankSum, None) => continue,
            _ => Vec::new(),
        };
        let name = property.name();
        match classify(&a, property, &factors) {
            Ok(report) => {
                t.check(&format!("classifier:{name}"), report.consistent());
                t.count(format!(
                    "{name}:{}",
                    if report.direct_check {
                        "holds"
                    } else {
                        "fails"
                    }
                ));
            }
            Err(Error::NotPairwiseCoprime | Error::NotCharPolyFactorization)
                if property == Property::CharFactorRankSum =>
            {
                t.count(format!("{name}:precondition_skipped"));
            }
            Err(e) => t.fail(&format!("classifier:{name}: {e}")),
        }
    }
    log
}

fn pair_mode_name(mode: PairMode) -> &'static str {
    match mode {
        PairMode::Independent => "independent",
        PairMode::SharedFactor => "shared_factor",
        PairMode::AnnihilatorSplit => "annihilator_split",
    }
}

fn run_over<F: Field>(field: F, cfg: &FuzzConfig) -> Vec<TrialLog> {
    (0..cfg.trials)
        .into_par_iter()
        .map(|i| run_trial(&field, cfg, i))
        .collect()
}

/// Runs the suite on `threads` worker threads (0 = rayon's default).
pub fn run_fuzz(cfg: &FuzzConfig, threads: usize) -> Result<FuzzReport, CliError> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let start = Instant::now();
    let logs = pool.install(|| -> Result<Vec<TrialLog>, CliError> {
        Ok(match cfg.field {
            FieldSpec::Rationals => run_over(Rationals::new(), cfg),
            FieldSpec::Prime(p) => run_over(PrimeField::new(u64::from(p))?, cfg),
        })
    })?;
    let elapsed_ms = start.elapsed().as_millis();

    let mut failures = Vec::new();
    let mut stats = BTreeMap::new();
    for log in logs {
        failures.extend(log.failures);
        for key in log.stats {
            *stats.entry(key).or_insert(0) += 1;
        }
    }
    failures.sort_by_key(|f: &Failure| f.trial);
    Ok(FuzzReport {
        config: cfg.clone(),
        trials_run: cfg.trials,
        failures,
        stats,
        elapsed_ms,
    })
}
