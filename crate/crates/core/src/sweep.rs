//! Batch runs over primes, alphas and q-indices, and report rendering.

use std::cmp::Ordering;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::{is_padic_integral, parse_rational};
use crate::qseries::{verify_conjecture41, verify_gz};
use crate::verifier::{
    default_alpha_grid, effective_truncation, verify_lemma, verify_main1, verify_tail, verify_theorem, Family,
    Status, Truncation, VerificationRecord,
};
use crate::Rational;

/// Ascending primes in `[p_min, p_max]` satisfying `condition`.
pub fn sieve_primes(p_min: u64, p_max: u64, condition: impl Fn(u64) -> bool) -> Result<Vec<u64>> {
    if p_min < 2 || p_min > p_max {
        return Err(Error::EmptyRange { lo: p_min, hi: p_max });
    }
    let n = p_max as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            for j in (i * i..=n).step_by(i) {
                composite[j] = true;
            }
        }
        i += 1;
    }
    Ok((p_min..=p_max)
        .filter(|&p| !composite[p as usize] && condition(p))
        .collect())
}

/// `count` seeded samples `+-r/d` with `1 <= r, d <= 9`, never a
/// non-positive integer.
pub fn sample_alphas(seed: u64, count: usize) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let r: i64 = rng.gen_range(1..=9);
        let d: i64 = rng.gen_range(1..=9);
        let x = Rational::new(r.into(), d.into());
        let x = if rng.gen_bool(0.5) { -x } else { x };
        if x.is_integer() && x <= Rational::from_integer(0.into()) {
            continue;
        }
        out.push(x);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(Error::Config(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub families: Vec<Family>,
    pub p_min: u64,
    pub p_max: u64,
    /// Explicit alphas; empty means the default grid at each prime.
    pub alphas: Vec<Rational>,
    /// Extra seeded alphas added to the grid at every prime.
    pub alpha_samples: usize,
    pub seed: u64,
    pub n_list: Vec<u64>,
    pub truncations: Vec<Truncation>,
    /// Check modulo `p^min(e, native)` instead of the claimed exponent.
    pub modulus_exp: Option<u32>,
    pub workers: usize,
    /// Attach wall-clock times; reports are then no longer reproducible.
    pub timings: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            families: Vec::new(),
            p_min: 5,
            p_max: 100,
            alphas: Vec::new(),
            alpha_samples: 0,
            seed: 0,
            n_list: Vec::new(),
            truncations: vec![Truncation::Short, Truncation::Full],
            modulus_exp: None,
            workers: 1,
            timings: false,
        }
    }
}

impl SweepConfig {
    pub fn parse_alphas(list: &[String]) -> Result<Vec<Rational>> {
        list.iter().map(|s| parse_rational(s)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if self.families.is_empty() {
            return bad("no families selected");
        }
        if self.p_min < 2 || self.p_min > self.p_max {
            return bad("need 2 <= pmin <= pmax");
        }
        if self.n_list.contains(&0) {
            return bad("q-indices must be at least 1");
        }
        if self.families.iter().any(|f| f.is_q()) && self.n_list.is_empty() {
            return bad("q-families need at least one n");
        }
        if let Some(e) = self.modulus_exp {
            if !(3..=4).contains(&e) {
                return bad("modulus exponent must be 3 or 4");
            }
        }
        if self.truncations.is_empty() {
            return bad("no truncation selected");
        }
        if self.workers == 0 {
            return bad("workers must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Instance {
    Classical { family: Family, p: u64, truncation: Truncation },
    Alpha { family: Family, p: u64, alpha: Rational },
    Q { family: Family, n: u64 },
}

fn instances(cfg: &SweepConfig) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for &family in &cfg.families {
        if family.is_classical() {
            for p in sieve_primes(cfg.p_min, cfg.p_max, |p| family.check_prime(p).is_ok())? {
                let mut seen = Vec::new();
                for &t in &cfg.truncations {
                    let truncation = effective_truncation(family, t);
                    if !seen.contains(&truncation) {
                        seen.push(truncation);
                        out.push(Instance::Classical { family, p, truncation });
                    }
                }
            }
        } else if family.takes_alpha() {
            let extra = sample_alphas(cfg.seed, cfg.alpha_samples);
            for p in sieve_primes(cfg.p_min, cfg.p_max, |p| p > 3)? {
                let mut grid = if cfg.alphas.is_empty() {
                    default_alpha_grid(p)
                } else {
                    cfg.alphas.clone()
                };
                grid.extend(extra.iter().filter(|a| is_padic_integral(a, p)).cloned());
                grid.sort();
                grid.dedup();
                for alpha in grid {
                    out.push(Instance::Alpha { family, p, alpha });
                }
            }
        } else {
            for &n in &cfg.n_list {
                out.push(Instance::Q { family, n });
            }
        }
    }
    Ok(out)
}

fn run_instance(inst: &Instance, modulus_exp: Option<u32>) -> VerificationRecord {
    let (result, family) = match inst {
        Instance::Classical { family, p, truncation } => (verify_theorem(*family, *p, *truncation, None), *family),
        Instance::Alpha { family, p, alpha } => {
            let r = match family {
                Family::Main1 => verify_main1(alpha, *p, Truncation::Full),
                Family::Main1Trunc => verify_main1(alpha, *p, Truncation::Short),
                Family::Tail => verify_tail(alpha, *p),
                lemma => verify_lemma(*lemma, alpha, *p),
            };
            (r, *family)
        }
        Instance::Q { family, n } => {
            let r = match family {
                Family::Conj41 => verify_conjecture41(*n),
                other => verify_gz(*n, *other),
            };
            (r, *family)
        }
    };
    let rec = match result {
        Ok(rec) => match (modulus_exp, rec.p) {
            (Some(e), Some(_)) if e < family.native_exp() => rec.weaken(e),
            _ => rec,
        },
        Err(e) => VerificationRecord::skipped(family, e.to_string()),
    };
    match inst {
        Instance::Classical { p, truncation, .. } => rec.with_p(*p).with_truncation(*truncation),
        Instance::Alpha { family, p, alpha } => {
            let rec = rec.with_p(*p).with_alpha(alpha);
            match family {
                Family::Main1 => rec.with_truncation(Truncation::Full),
                Family::Main1Trunc => rec.with_truncation(Truncation::Short),
                _ => rec,
            }
        }
        Instance::Q { n, .. } => rec.with_n(*n),
    }
}

fn record_order(a: &VerificationRecord, b: &VerificationRecord) -> Ordering {
    let alpha = |r: &VerificationRecord| r.alpha.as_deref().map(|s| parse_rational(s).expect("formatted rational"));
    a.family
        .cmp(&b.family)
        .then(a.p.or(a.n).cmp(&b.p.or(b.n)))
        .then_with(|| alpha(a).cmp(&alpha(b)))
        .then(a.truncation.cmp(&b.truncation))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    #[serde(skip)]
    pub failures: Vec<VerificationRecord>,
}

impl ReportSummary {
    pub fn of(records: &[VerificationRecord]) -> Self {
        let count = |s| records.iter().filter(|r| r.status == s).count();
        Self {
            total: records.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skip),
            failures: records.iter().filter(|r| r.status == Status::Fail).cloned().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub records: Vec<VerificationRecord>,
    pub summary: ReportSummary,
}

impl Report {
    pub fn new(records: Vec<VerificationRecord>) -> Self {
        let summary = ReportSummary::of(&records);
        Self { records, summary }
    }

    /// A failed conjecture instance, i.e. a counterexample.
    pub fn conjecture_counterexample(&self) -> Option<&VerificationRecord> {
        self.summary.failures.iter().find(|r| r.family == Family::Conj41)
    }

    /// 0 when everything ran clean, 3 for a conjecture counterexample,
    /// 1 for any other failure.
    pub fn exit_code(&self) -> i32 {
        if self.conjecture_counterexample().is_some() {
            3
        } else if self.summary.failed > 0 {
            1
        } else {
            0
        }
    }
}

/// Runs every applicable instance on a pool of `cfg.workers` threads. Errors
/// of single instances become skipped records; the order of records does not
/// depend on scheduling.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Report> {
    cfg.validate()?;
    let work = instances(cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let mut records: Vec<VerificationRecord> = pool.install(|| {
        work.par_iter()
            .map(|inst| {
                let start = Instant::now();
                let mut rec = run_instance(inst, cfg.modulus_exp);
                if cfg.timings {
                    rec.elapsed_ms = Some(start.elapsed().as_millis() as u64);
                }
                rec
            })
            .collect()
    });
    records.sort_by(record_order);
    Ok(Report::new(records))
}

#[derive(Serialize)]
struct CsvRow<'a> {
    family: &'a str,
    p: Option<u64>,
    n: Option<u64>,
    alpha: Option<&'a str>,
    truncation: Option<Truncation>,
    modulus: &'a str,
    lhs: &'a str,
    rhs: &'a str,
    pass: bool,
    status: Status,
    reason: Option<&'a str>,
    elapsed_ms: Option<u64>,
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skip => "SKIP",
    }
}

fn text_line(r: &VerificationRecord) -> String {
    let mut line = format!("{} {}", status_word(r.status), r.family);
    if let Some(p) = r.p {
        line += &format!(" p={p}");
    }
    if let Some(n) = r.n {
        line += &format!(" n={n}");
    }
    if let Some(a) = &r.alpha {
        line += &format!(" alpha={a}");
    }
    if let Some(t) = r.truncation {
        line += &format!(" trunc={t}");
    }
    match r.status {
        Status::Skip => line += &format!(": {}", r.reason.as_deref().unwrap_or("")),
        _ => {
            let rel = if r.pass { "==" } else { "!=" };
            line += &format!(": {} {rel} {} mod {}", r.lhs, r.rhs, r.modulus);
        }
    }
    if let Some(ms) = r.elapsed_ms {
        line += &format!(" ({ms} ms)");
    }
    line
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("serializable") + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &report.records {
                w.serialize(CsvRow {
                    family: r.family.name(),
                    p: r.p,
                    n: r.n,
                    alpha: r.alpha.as_deref(),
                    truncation: r.truncation,
                    modulus: &r.modulus,
                    lhs: &r.lhs,
                    rhs: &r.rhs,
                    pass: r.pass,
                    status: r.status,
                    reason: r.reason.as_deref(),
                    elapsed_ms: r.elapsed_ms,
                })
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
        Format::Text => {
            let mut out: String = report.records.iter().map(|r| text_line(r) + "\n").collect();
            let s = &report.summary;
            out += &format!(
                "total {} passed {} failed {} skipped {}\n",
                s.total, s.passed, s.failed, s.skipped
            );
            out
        }
    }
}

/// Result of a named identity or smoke check that is not tied to a prime.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub params: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRecord {
    pub fn new(check: &str, params: impl Into<String>, pass: bool) -> Self {
        Self {
            check: check.to_string(),
            params: params.into(),
            pass,
            detail: None,
        }
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

pub fn render_checks(checks: &[CheckRecord], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(checks).expect("serializable") + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for c in checks {
                w.serialize(c).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
        Format::Text => checks
            .iter()
            .map(|c| {
                let word = if c.pass { "PASS" } else { "FAIL" };
                match &c.detail {
                    Some(d) => format!("{word} {} {}: {d}\n", c.check, c.params),
                    None => format!("{word} {} {}\n", c.check, c.params),
                }
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::rat;

    #[test]
    fn sieve_examples() {
        assert_eq!(sieve_primes(5, 20, |p| p % 3 == 1).unwrap(), vec![7, 13, 19]);
        assert_eq!(sieve_primes(5, 20, |p| p % 4 == 3).unwrap(), vec![7, 11, 19]);
        assert_eq!(sieve_primes(24, 28, |_| true).unwrap(), Vec::<u64>::new());
        assert_eq!(sieve_primes(2, 2, |_| true).unwrap(), vec![2]);
        assert!(matches!(sieve_primes(10, 5, |_| true), Err(Error::EmptyRange { .. })));
        assert!(sieve_primes(1, 5, |_| true).is_err());
    }

    #[test]
    fn sieve_matches_trial_division() {
        let sieved = sieve_primes(2, 2000, |_| true).unwrap();
        let trial: Vec<u64> = (2..=2000).filter(|&n| crate::padic::is_prime(n)).collect();
        assert_eq!(sieved, trial);
    }

    #[test]
    fn samples_are_seeded_and_pole_free() {
        let a = sample_alphas(7, 50);
        assert_eq!(a, sample_alphas(7, 50));
        assert_ne!(a, sample_alphas(8, 50));
        for x in &a {
            assert!(!(x.is_integer() && *x <= rat(0, 1)));
            assert!(*x.numer().magnitude() <= 9u32.into() && *x.denom() <= 9.into());
        }
    }

    #[test]
    fn sweep_examples() {
        let cfg = SweepConfig {
            families: vec![Family::E2Mod4],
            p_min: 5,
            p_max: 50,
            ..Default::default()
        };
        let r = run_sweep(&cfg).unwrap();
        assert_eq!(r.summary.total, 2 * 6);
        assert_eq!(r.summary.passed, 12);
        let ps: Vec<u64> = r.records.iter().map(|x| x.p.unwrap()).collect();
        assert_eq!(ps, vec![7, 7, 13, 13, 19, 19, 31, 31, 37, 37, 43, 43]);
        assert_eq!(r.exit_code(), 0);

        let q = SweepConfig {
            families: vec![Family::Conj41],
            n_list: vec![5, 9],
            ..Default::default()
        };
        assert_eq!(run_sweep(&q).unwrap().summary.total, 2);

        assert!(matches!(run_sweep(&SweepConfig::default()), Err(Error::Config(_))));
    }

    #[test]
    fn instance_errors_become_skips() {
        let cfg = SweepConfig {
            families: vec![Family::Tail, Family::GzF2],
            p_min: 11,
            p_max: 11,
            alphas: vec![rat(1, 1), rat(1, 11), rat(1, 3)],
            n_list: vec![7],
            ..Default::default()
        };
        let r = run_sweep(&cfg).unwrap();
        assert_eq!(r.summary.total, 4);
        assert_eq!(r.summary.passed, 1);
        assert_eq!(r.summary.skipped, 3);
        assert!(r.records.iter().all(|x| x.status != Status::Skip || x.reason.is_some()));
    }

    #[test]
    fn modulus_exponent_weakens() {
        let cfg = SweepConfig {
            families: vec![Family::SunB2, Family::B2],
            p_min: 7,
            p_max: 7,
            truncations: vec![Truncation::Short],
            modulus_exp: Some(3),
            ..Default::default()
        };
        let r = run_sweep(&cfg).unwrap();
        assert!(r.records.iter().all(|x| x.modulus == "7^3" && x.pass));
    }

    #[test]
    fn deterministic_across_workers() {
        let mk = |workers| SweepConfig {
            families: vec![Family::Main1, Family::LemmaSigma, Family::F2Mod4, Family::GzE2],
            p_min: 5,
            p_max: 23,
            n_list: vec![3, 5],
            workers,
            ..Default::default()
        };
        let one = render(&run_sweep(&mk(1)).unwrap(), Format::Json);
        let many = render(&run_sweep(&mk(6)).unwrap(), Format::Json);
        assert_eq!(one, many);
        assert!(!one.contains("elapsed_ms"));
    }

    #[test]
    fn renderings() {
        let cfg = SweepConfig {
            families: vec![Family::B2],
            p_min: 5,
            p_max: 5,
            truncations: vec![Truncation::Short],
            ..Default::default()
        };
        let r = run_sweep(&cfg).unwrap();
        let text = render(&r, Format::Text);
        assert!(text.starts_with("PASS B2 p=5 trunc=short: 5 == 5 mod 5^3\n"), "{text}");
        let csv = render(&r, Format::Csv);
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.starts_with("family,p,n,alpha,truncation,modulus,lhs,rhs,pass,status,reason,elapsed_ms\n"));
        let json: serde_json::Value = serde_json::from_str(&render(&r, Format::Json)).unwrap();
        assert_eq!(json["records"][0]["family"], "B2");
        assert_eq!(json["records"][0]["truncation"], "short");
        assert_eq!(json["summary"]["total"], 1);
    }

    #[test]
    fn exit_codes() {
        let mut rec = VerificationRecord::skipped(Family::Conj41, "x");
        rec.status = Status::Fail;
        assert_eq!(Report::new(vec![rec.clone()]).exit_code(), 3);
        rec.family = Family::GzE2;
        assert_eq!(Report::new(vec![rec]).exit_code(), 1);
        assert_eq!(Report::new(vec![]).exit_code(), 0);
    }
}
