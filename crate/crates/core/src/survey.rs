//! Exhaustive labeled enumeration of small graphs and streaming
//! classification of graph6 archives, aggregated into check and census
//! summaries.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::classify::{report, Analysis, Check, ClassReport, ClassifyError, Verdict};
use crate::graph::Graph;
use crate::io::{parse_graph6, write_graph6};
use crate::iso::are_isomorphic;
use crate::spectra::{float_spectrum, DEFAULT_CLUSTER_TOLERANCE};

/// Largest order for built-in enumeration.
pub const MAX_ENUMERATION_ORDER: usize = 8;

/// From this order on, graphs with more than four distinct eigenvalues are
/// counted but not analysed.
pub const PREFILTER_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurveyError {
    #[error("enumeration order {0} is outside 2..={MAX_ENUMERATION_ORDER}")]
    OrderOutOfRange(usize),
    #[error("order 8 enumeration needs the explicit opt-in")]
    OrderEightNotEnabled,
    #[error("no checks selected")]
    NoChecks,
    #[error("order range {0}..{1} is empty")]
    EmptyRange(usize, usize),
}

fn pair_count(n: usize) -> u32 {
    (n * (n - 1) / 2) as u32
}

/// Every labeled graph on `n` vertices in edge-bitmask order, optionally only
/// the connected ones.
pub fn enumerate_labeled(n: usize, connected_only: bool) -> Result<impl Iterator<Item = Graph>, SurveyError> {
    if !(2..=MAX_ENUMERATION_ORDER).contains(&n) {
        return Err(SurveyError::OrderOutOfRange(n));
    }
    let total = 1u64 << pair_count(n);
    Ok((0..total)
        .map(move |mask| Graph::from_edge_mask(n, mask).expect("order checked"))
        .filter(move |g| !connected_only || g.is_connected()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Builtin,
    /// One graph6 record per entry.
    Graph6(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub connected_only: bool,
    pub source: Source,
    pub checks: BTreeSet<Check>,
    pub workers: usize,
    /// Permits `n_max = 8` for built-in enumeration.
    pub allow_order_eight: bool,
}

impl Default for SurveyConfig {
    fn default() -> SurveyConfig {
        SurveyConfig {
            n_min: 2,
            n_max: 7,
            connected_only: true,
            source: Source::Builtin,
            checks: Check::ALL.into_iter().collect(),
            workers: 1,
            allow_order_eight: false,
        }
    }
}

impl SurveyConfig {
    pub fn builtin(n_min: usize, n_max: usize, connected_only: bool) -> SurveyConfig {
        SurveyConfig { n_min, n_max, connected_only, ..SurveyConfig::default() }
    }

    fn validate(&self) -> Result<(), SurveyError> {
        if self.checks.is_empty() {
            return Err(SurveyError::NoChecks);
        }
        if self.source == Source::Builtin {
            if self.n_min > self.n_max {
                return Err(SurveyError::EmptyRange(self.n_min, self.n_max));
            }
            for n in [self.n_min, self.n_max] {
                if !(2..=MAX_ENUMERATION_ORDER).contains(&n) {
                    return Err(SurveyError::OrderOutOfRange(n));
                }
            }
            if self.n_max == 8 && !self.allow_order_eight {
                return Err(SurveyError::OrderEightNotEnabled);
            }
        }
        Ok(())
    }
}

/// A graph found in 𝒢 (or ℋ) with its pattern.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct MemberRecord {
    pub graph6: String,
    pub n: usize,
    pub pattern: String,
    pub spectrum: String,
    pub integral: bool,
    pub certified: bool,
    pub connected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    pub graph6: String,
    pub check: Check,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Skip {
    pub record: String,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SurveySummary {
    pub graphs_scanned: usize,
    pub uncertified: usize,
    /// Graphs skipped by the order-8 spectral prefilter.
    pub prefiltered: usize,
    pub pattern_counts: BTreeMap<String, usize>,
    pub check_tallies: BTreeMap<Check, CheckTally>,
    pub g_members: Vec<MemberRecord>,
    pub h_members: Vec<MemberRecord>,
    pub failures: Vec<Failure>,
    pub skips: Vec<Skip>,
    /// Excluded from comparisons via [`SurveySummary::same_results`].
    pub wall_time_ms: u128,
}

impl SurveySummary {
    /// Merges `other` into `self`; the result does not depend on merge order.
    pub fn merge(&mut self, other: SurveySummary) {
        self.graphs_scanned += other.graphs_scanned;
        self.uncertified += other.uncertified;
        self.prefiltered += other.prefiltered;
        for (k, v) in other.pattern_counts {
            *self.pattern_counts.entry(k).or_default() += v;
        }
        for (k, t) in other.check_tallies {
            let e = self.check_tallies.entry(k).or_default();
            e.pass += t.pass;
            e.fail += t.fail;
            e.not_applicable += t.not_applicable;
        }
        self.g_members.extend(other.g_members);
        self.h_members.extend(other.h_members);
        self.failures.extend(other.failures);
        self.skips.extend(other.skips);
        self.normalize();
    }

    fn normalize(&mut self) {
        self.g_members.sort();
        self.h_members.sort();
        self.failures.sort();
        self.skips.sort();
    }

    pub fn is_clean(&self) -> bool {
        self.failures.is_empty() && self.skips.is_empty()
    }

    /// Equality ignoring wall time.
    pub fn same_results(&self, other: &SurveySummary) -> bool {
        let strip = |s: &SurveySummary| SurveySummary { wall_time_ms: 0, ..s.clone() };
        strip(self) == strip(other)
    }

    fn record(&mut self, g: &Graph, checks: &BTreeSet<Check>) {
        self.graphs_scanned += 1;
        let graph6 = || write_graph6(g).unwrap_or_default();
        let a = match Analysis::new(g) {
            Ok(a) => a,
            Err(e) => {
                self.skips.push(Skip { record: graph6(), reason: e.to_string() });
                return;
            }
        };
        if !a.spectrum.is_certified() {
            self.uncertified += 1;
        }
        *self.pattern_counts.entry(a.pattern.name().to_string()).or_default() += 1;
        for &c in checks {
            let v = a.check(c);
            let tally = self.check_tallies.entry(c).or_default();
            match v {
                Verdict::Pass(_) => tally.pass += 1,
                Verdict::NotApplicable(_) => tally.not_applicable += 1,
                Verdict::Fail(detail) => {
                    tally.fail += 1;
                    self.failures.push(Failure { graph6: graph6(), check: c, detail });
                }
            }
        }
        if a.in_g {
            let rec = MemberRecord {
                graph6: graph6(),
                n: g.order(),
                pattern: a.pattern.to_string(),
                spectrum: a.spectrum.to_string(),
                integral: a.spectrum.is_integral(),
                certified: a.spectrum.is_certified(),
                connected: a.connected,
            };
            if a.in_h() {
                self.h_members.push(rec.clone());
            }
            self.g_members.push(rec);
        } else if a.in_h() {
            self.failures.push(Failure {
                graph6: graph6(),
                check: Check::UpperBoundEquality,
                detail: "member of H but not of G".into(),
            });
        }
    }
}

/// Bitmask ranges covering `0..2^pairs`, in order.
fn partitions(n: usize) -> Vec<(u64, u64)> {
    let total = 1u64 << pair_count(n);
    let chunks = total.min(256);
    let step = total / chunks;
    (0..chunks).map(|c| (c * step, if c + 1 == chunks { total } else { (c + 1) * step })).collect()
}

fn scan_range(n: usize, range: (u64, u64), config: &SurveyConfig) -> SurveySummary {
    let mut s = SurveySummary::default();
    for mask in range.0..range.1 {
        let g = Graph::from_edge_mask(n, mask).expect("order checked");
        if config.connected_only && !g.is_connected() {
            continue;
        }
        if g.edge_count() == 0 {
            s.graphs_scanned += 1;
            *s.pattern_counts.entry("Empty".into()).or_default() += 1;
            continue;
        }
        if n >= PREFILTER_ORDER && too_many_eigenvalues(&g) {
            s.graphs_scanned += 1;
            s.prefiltered += 1;
            *s.pattern_counts.entry("Other".into()).or_default() += 1;
            continue;
        }
        s.record(&g, &config.checks);
    }
    s
}

/// More than four float clusters: outside 𝒢 and every pattern with checks.
fn too_many_eigenvalues(g: &Graph) -> bool {
    float_spectrum(g, DEFAULT_CLUSTER_TOLERANCE).is_ok_and(|f| f.clusters().len() > 4)
}

fn scan_records(records: &[String], config: &SurveyConfig) -> SurveySummary {
    let mut s = SurveySummary::default();
    for line in records {
        match parse_graph6(line.as_bytes()) {
            Ok(g) if config.connected_only && !g.is_connected() => {}
            Ok(g) if g.edge_count() == 0 => {
                s.graphs_scanned += 1;
                *s.pattern_counts.entry("Empty".into()).or_default() += 1;
            }
            Ok(g) => s.record(&g, &config.checks),
            Err(e) => s.skips.push(Skip { record: line.clone(), reason: e.to_string() }),
        }
    }
    s
}

/// Classifies every graph from the configured source and runs the selected checks.
pub fn run_survey(config: &SurveyConfig) -> Result<SurveySummary, SurveyError> {
    config.validate()?;
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(config.workers.max(1)).build().expect("thread pool");
    let parts: Vec<SurveySummary> = pool.install(|| match &config.source {
        Source::Builtin => {
            let jobs: Vec<(usize, (u64, u64))> =
                (config.n_min..=config.n_max).flat_map(|n| partitions(n).into_iter().map(move |r| (n, r))).collect();
            jobs.par_iter().map(|&(n, r)| scan_range(n, r, config)).collect()
        }
        Source::Graph6(lines) => {
            let records: Vec<String> = lines.iter().map(|l| l.trim().to_string()).filter(|l| !l.is_empty()).collect();
            records.par_chunks(64).map(|c| scan_records(c, config)).collect()
        }
    });
    let mut summary = SurveySummary::default();
    for p in parts {
        summary.merge(p);
    }
    summary.wall_time_ms = start.elapsed().as_millis();
    Ok(summary)
}

/// Connected members of 𝒢 on `n` vertices, one per isomorphism class, in
/// order of first appearance.
pub fn census_g(n: usize) -> Result<Vec<(String, ClassReport)>, SurveyError> {
    let mut reps: Vec<(Graph, String, ClassReport)> = Vec::new();
    for g in enumerate_labeled(n, true)? {
        let Ok(a) = Analysis::new(&g) else { continue };
        if !a.in_g {
            continue;
        }
        let degrees = g.degree_profile().degrees;
        if reps.iter().any(|(h, _, _)| h.degree_profile().degrees == degrees && are_isomorphic(h, &g)) {
            continue;
        }
        let r = report(&a, &Check::ALL);
        reps.push((g.clone(), r.graph6.clone(), r));
    }
    Ok(reps.into_iter().map(|(_, s, r)| (s, r)).collect())
}

/// Classifies graphs one by one, keeping going past per-graph errors.
pub fn classify_all(graphs: &[Graph]) -> Vec<Result<ClassReport, ClassifyError>> {
    graphs.iter().map(crate::classify::classify).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_counts() {
        let counts: Vec<(usize, usize)> = (3..=5)
            .map(|n| (enumerate_labeled(n, false).unwrap().count(), enumerate_labeled(n, true).unwrap().count()))
            .collect();
        assert_eq!(counts, vec![(8, 4), (64, 38), (1024, 728)]);
        assert!(enumerate_labeled(9, true).is_err());
        assert!(enumerate_labeled(1, true).is_err());
    }

    #[test]
    fn config_validation() {
        assert_eq!(run_survey(&SurveyConfig::builtin(2, 8, true)), Err(SurveyError::OrderEightNotEnabled));
        assert_eq!(run_survey(&SurveyConfig::builtin(5, 4, true)), Err(SurveyError::EmptyRange(5, 4)));
        let none = SurveyConfig { checks: BTreeSet::new(), ..SurveyConfig::default() };
        assert_eq!(run_survey(&none), Err(SurveyError::NoChecks));
    }

    #[test]
    fn small_survey_is_clean_and_consistent() {
        let s = run_survey(&SurveyConfig::builtin(2, 5, true)).unwrap();
        assert!(s.is_clean(), "{:?}", s.failures);
        assert_eq!(s.graphs_scanned, 1 + 4 + 38 + 728);
        assert_eq!(s.pattern_counts.values().sum::<usize>(), s.graphs_scanned);
        assert!(s.h_members.is_empty());
    }

    #[test]
    fn worker_count_independence() {
        let one = run_survey(&SurveyConfig::builtin(2, 5, false)).unwrap();
        let four = run_survey(&SurveyConfig { workers: 4, ..SurveyConfig::builtin(2, 5, false) }).unwrap();
        assert!(one.same_results(&four));
    }

    #[test]
    fn graph6_source_records_skips() {
        let config = SurveyConfig {
            source: Source::Graph6(vec!["A_".into(), "D?".into(), "C~".into()]),
            ..SurveyConfig::default()
        };
        let s = run_survey(&config).unwrap();
        assert_eq!(s.graphs_scanned, 2);
        assert_eq!(s.skips.len(), 1);
        assert!(!s.is_clean());
    }

    #[test]
    fn census_small_orders() {
        let names = |n| -> Vec<String> { census_g(n).unwrap().into_iter().map(|(_, r)| r.pattern.to_string()).collect() };
        let c4 = census_g(4).unwrap();
        assert_eq!(c4.len(), 3);
        assert_eq!(names(5).len(), 3);
        let c6 = census_g(6).unwrap();
        assert!(c6.iter().any(|(_, r)| r.pattern.to_string() == "Case1a(4,-2,2)"));
    }
}
