//! Seeded verification suites and their reports.
//!
//! Every record names the generator, seed and parameters of its instance,
//! so [`replay`] rebuilds it; failing records also carry the graph itself.
//! Suites run on a rayon pool and sort their records before returning, so
//! reports do not depend on scheduling.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{chen_yu_order, extraction_hypothesis};
use crate::connectivity::{is_circuit_graph, is_two_connected, subgraph_bounded_by_cycle};
use crate::cycles::{
    circumference_upper_check_in, cycle_of_length_exactly, longest_cycle, sample_cycles,
    two_disjoint_k_cycles_within, Budget, Circumference,
};
use crate::error::{Error, Result};
use crate::extractor::{check_witness, extract_near_triangulation, Extraction};
use crate::generators::{
    glued_construction, glued_lobes, moon_moser, random_near_triangulation, random_two_connected,
};
use crate::holes::{deficit, is_joinable, joinable_after_deletion};
use crate::io::write_text;
use crate::plane::{CycleRef, PlaneGraph};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Budget,
    NotApplicable,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "FAIL",
            Outcome::Budget => "budget",
            Outcome::NotApplicable => "n/a",
        })
    }
}

/// Enough to rebuild an instance with [`replay`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Descriptor {
    pub generator: String,
    pub n: usize,
    pub seed: u64,
    pub params: Vec<(String, usize)>,
}

impl Descriptor {
    pub fn new(generator: &str, n: usize, seed: u64) -> Self {
        Descriptor {
            generator: generator.to_string(),
            n,
            seed,
            params: Vec::new(),
        }
    }

    pub fn with(mut self, key: &str, value: usize) -> Self {
        self.params.push((key.to_string(), value));
        self
    }

    pub fn param(&self, key: &str) -> Option<usize> {
        self.params.iter().find(|(k, _)| k == key).map(|p| p.1)
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={} seed={}", self.generator, self.n, self.seed)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

/// Rebuilds the instance a descriptor names.
pub fn replay(d: &Descriptor) -> Result<PlaneGraph> {
    let need = |k: &str| {
        d.param(k)
            .ok_or_else(|| Error::BadParameters(format!("descriptor lacks {k}")))
    };
    match d.generator.as_str() {
        "random-2c" => Ok(random_two_connected(d.n, need("target_m")?, d.seed)?.0),
        "near-tri" => random_near_triangulation(d.n, d.seed),
        "moon-moser" => moon_moser(need("level")?),
        "glued" => Ok(glued_construction(d.n, need("k")?)?.0),
        other => Err(Error::BadParameters(format!("unknown generator {other}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// The instance in text format.
    pub graph: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub descriptor: Descriptor,
    pub check: String,
    pub outcome: Outcome,
    pub detail: String,
    pub counterexample: Option<Counterexample>,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    fn new(suite: &str, mut records: Vec<CheckRecord>) -> Self {
        records.sort_by(|a, b| {
            (&a.suite, &a.descriptor, &a.check).cmp(&(&b.suite, &b.descriptor, &b.check))
        });
        VerificationReport {
            suite: suite.to_string(),
            records,
        }
    }

    /// No record failed. Budget and not-applicable records do not count
    /// against this.
    pub fn passed(&self) -> bool {
        self.count(Outcome::Fail) == 0
    }

    pub fn count(&self, outcome: Outcome) -> usize {
        self.records.iter().filter(|r| r.outcome == outcome).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.outcome == Outcome::Fail)
    }

    /// Concatenates reports under a new suite name.
    pub fn merged(suite: &str, parts: Vec<VerificationReport>) -> Self {
        Self::new(suite, parts.into_iter().flat_map(|r| r.records).collect())
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} records, {} pass, {} fail, {} budget, {} n/a",
            self.suite,
            self.records.len(),
            self.count(Outcome::Pass),
            self.count(Outcome::Fail),
            self.count(Outcome::Budget),
            self.count(Outcome::NotApplicable),
        )
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("{}\n", self.summary());
        out.push_str(&format!(
            "{:<7} {:<12} {:<26} {:>10}  {:<40} {}\n",
            "outcome", "suite", "check", "wall_ms", "instance", "detail"
        ));
        for r in &self.records {
            out.push_str(&format!(
                "{:<7} {:<12} {:<26} {:>10.2}  {:<40} {}\n",
                r.outcome.to_string(),
                r.suite,
                r.check,
                r.wall_ms,
                r.descriptor.to_string(),
                r.detail
            ));
        }
        out
    }

    /// One JSON object per record.
    pub fn to_json_lines(&self) -> String {
        self.records
            .iter()
            .map(|r| serde_json::to_string(r).expect("records serialize") + "\n")
            .collect()
    }
}

/// Runs one check, timing it and attaching the graph when it fails.
fn record(
    suite: &str,
    d: &Descriptor,
    check: &str,
    g: Option<&PlaneGraph>,
    f: impl FnOnce() -> (Outcome, String),
) -> CheckRecord {
    let start = Instant::now();
    let (outcome, detail) = f();
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let counterexample = (outcome == Outcome::Fail).then(|| Counterexample {
        graph: g.map(write_text).unwrap_or_default(),
        detail: detail.clone(),
    });
    CheckRecord {
        suite: suite.to_string(),
        descriptor: d.clone(),
        check: check.to_string(),
        outcome,
        detail,
        counterexample,
        wall_ms,
    }
}

fn on_pool<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(job),
        Err(_) => job(),
    }
}

/// Numeric helper for seeded instance streams.
fn mix(seed: u64, lane: u64, i: u64) -> u64 {
    seed.wrapping_mul(1_000_003)
        .wrapping_add(lane.wrapping_mul(100_003))
        .wrapping_add(i)
}

/// An extraction instance: a graph and the order `t` asked for.
#[derive(Clone, Debug)]
pub struct ExtractionCase {
    pub descriptor: Descriptor,
    pub graph: PlaneGraph,
    pub t: usize,
}

fn largest_m(n: usize, t: usize) -> usize {
    (0..n)
        .take_while(|&m| extraction_hypothesis(m, n, t))
        .last()
        .unwrap_or(0)
}

/// `per_t` seeded random 2-connected instances for each `t` in `ts`, with
/// `n` in `[t, max_n]`, kept only when `m(G) (3t - 7) < n - (t - 1)`.
pub fn extraction_cases(
    seed: u64,
    ts: std::ops::RangeInclusive<usize>,
    per_t: usize,
    max_n: usize,
) -> Result<Vec<ExtractionCase>> {
    let mut out = Vec::new();
    for t in ts {
        if t < 4 || max_n < t {
            return Err(Error::BadParameters(format!(
                "need 4 <= t <= max_n (t={t})"
            )));
        }
        let mut kept = 0;
        let mut i = 0u64;
        while kept < per_t {
            i += 1;
            let n = t + (i as usize * 7) % (max_n + 1 - t);
            let top = largest_m(n, t);
            let target = if top == 0 { 0 } else { 1 + i as usize % top };
            let s = mix(seed, t as u64, i);
            let (graph, m) = random_two_connected(n, target, s)?;
            if !extraction_hypothesis(m, n, t) {
                continue;
            }
            kept += 1;
            let descriptor = Descriptor::new("random-2c", n, s)
                .with("target_m", target)
                .with("t", t);
            out.push(ExtractionCase {
                descriptor,
                graph,
                t,
            });
        }
    }
    Ok(out)
}

/// Runs the extractor and the independent checker on every instance that
/// meets the density hypothesis; the others are recorded as not applicable.
pub fn verify_extraction(cases: &[ExtractionCase], workers: usize) -> VerificationReport {
    let records = on_pool(workers, || {
        cases
            .par_iter()
            .map(|c| {
                record(
                    "extraction",
                    &c.descriptor,
                    "witness",
                    Some(&c.graph),
                    || {
                        let g = &c.graph;
                        if !is_two_connected(g) {
                            return (Outcome::NotApplicable, "not 2-connected".into());
                        }
                        let (n, m) = (g.vertex_count(), deficit(g));
                        if !extraction_hypothesis(m, n, c.t) {
                            return (Outcome::NotApplicable, format!("m={m} too large for n={n}"));
                        }
                        match extract_near_triangulation(g, c.t) {
                            Ok(Extraction::Found { witness, route }) => {
                                if check_witness(g, &witness, c.t) {
                                    (
                                        Outcome::Pass,
                                        format!("m={m} order={} route={route:?}", witness.order),
                                    )
                                } else {
                                    (
                                        Outcome::Fail,
                                        format!("m={m} witness rejected: {witness:?}"),
                                    )
                                }
                            }
                            Ok(Extraction::NotFound { .. }) => {
                                (Outcome::Fail, format!("m={m} no witness"))
                            }
                            Err(e) => (Outcome::Fail, format!("m={m} error: {e}")),
                        }
                    },
                )
            })
            .collect()
    });
    VerificationReport::new("extraction", records)
}

/// Deliberate defects for testing that the suites can fail.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Mutant {
    /// Demands one joinable edge more than the bound gives.
    JoinableOffByOne,
}

/// Per-check search budget inside the lemma suites.
const LEMMA_BUDGET_MS: u64 = 20_000;

fn region_check(g: &PlaneGraph) -> (Outcome, String) {
    let cycles = match sample_cycles(g, 5, 50, Budget::millis(LEMMA_BUDGET_MS)) {
        Ok(cs) => cs,
        Err(_) => return (Outcome::Budget, "cycle sampling ran out".into()),
    };
    for c in &cycles {
        let cycle = CycleRef::new(c.vertices.clone());
        match subgraph_bounded_by_cycle(g, &cycle) {
            Ok(sub) if is_two_connected(&sub.graph) => {}
            Ok(_) => {
                return (
                    Outcome::Fail,
                    format!("region inside {:?} is not 2-connected", c.vertices),
                )
            }
            Err(e) => return (Outcome::Fail, format!("cycle {:?}: {e}", c.vertices)),
        }
    }
    (Outcome::Pass, format!("{} cycles", cycles.len()))
}

fn joinable_check(g: &PlaneGraph, mutant: Option<Mutant>) -> (Outcome, String) {
    let slack = usize::from(mutant != Some(Mutant::JoinableOffByOne));
    let outer = g.outer_cycle();
    for &v in &outer {
        let (r, ws) = match joinable_after_deletion(g, v) {
            Ok(x) => x,
            Err(e) => return (Outcome::Fail, format!("v={v}: {e}")),
        };
        if ws.len() + slack < r {
            return (
                Outcome::Fail,
                format!("v={v}: {} joinable edges for {r} blocks", ws.len()),
            );
        }
        let kept = g
            .edges()
            .into_iter()
            .filter(|&(a, b)| a != v && b != v)
            .collect();
        let rest = match g.edge_subgraph(&kept) {
            Ok(s) => s,
            Err(e) => return (Outcome::Fail, format!("v={v}: {e}")),
        };
        let rest_outer: Vec<usize> = rest
            .graph
            .outer_face()
            .vertex_set()
            .into_iter()
            .map(|x| rest.to_parent[x])
            .collect();
        for w in &ws {
            let (a, b) = w.endpoints;
            if !is_joinable(g, w) || !rest_outer.contains(&a) || !rest_outer.contains(&b) {
                return (Outcome::Fail, format!("v={v}: bad joinable edge {a}-{b}"));
            }
        }
    }
    (Outcome::Pass, format!("{} outer vertices", outer.len()))
}

fn lengths_check(g: &PlaneGraph) -> (Outcome, String) {
    let c = match longest_cycle(g, Budget::millis(LEMMA_BUDGET_MS)) {
        Circumference::Exact { length, .. } => length,
        Circumference::BudgetExceeded { upper_bound, .. } => {
            return (Outcome::Budget, format!("circumference <= {upper_bound}"));
        }
    };
    for k in 3..=c {
        match cycle_of_length_exactly(g, k) {
            Some(w) if w.len() == k && w.is_valid(g) => {}
            _ => {
                return (
                    Outcome::Fail,
                    format!("no {k}-cycle though circumference is {c}"),
                )
            }
        }
    }
    (Outcome::Pass, format!("circumference {c}"))
}

fn long_cycle_check(g: &PlaneGraph, k: usize) -> (Outcome, String) {
    match is_circuit_graph(g) {
        Ok(true) => {}
        _ => return (Outcome::NotApplicable, "not a circuit graph".into()),
    }
    match longest_cycle(g, Budget::millis(LEMMA_BUDGET_MS)) {
        Circumference::Exact { length, .. } if length >= k => {
            (Outcome::Pass, format!("circumference {length}"))
        }
        Circumference::Exact { length, .. } => {
            (Outcome::Fail, format!("circumference {length} < {k}"))
        }
        Circumference::BudgetExceeded { best, upper_bound } => (
            Outcome::Budget,
            format!("best {} upper {upper_bound}", best.map_or(0, |b| b.len())),
        ),
    }
}

/// The smallest order with at least `k^{log2 3}` vertices.
fn long_cycle_min_order(k: usize) -> usize {
    chen_yu_order(k).ceil() as usize
}

/// A seeded circuit graph of order `n`: random 2-connected graphs are tried
/// first, then a near-triangulation.
fn circuit_instance(n: usize, seed: u64, i: u64) -> Result<(Descriptor, PlaneGraph)> {
    for attempt in 0..20u64 {
        let s = seed.wrapping_add(attempt * 7919);
        let target = (i % 5) as usize;
        let (g, _) = random_two_connected(n, target, s)?;
        if is_circuit_graph(&g)? {
            return Ok((
                Descriptor::new("random-2c", n, s).with("target_m", target),
                g,
            ));
        }
    }
    Ok((
        Descriptor::new("near-tri", n, seed),
        random_near_triangulation(n, seed)?,
    ))
}

/// Four property suites on `trials` seeded instances each:
///
/// * regions bounded by up to 50 sampled cycles are 2-connected;
/// * deleting an outer vertex leaving `r` blocks exposes at least `r - 1`
///   joinable edges in the new outer face;
/// * a near-triangulation has cycles of every length up to its
///   circumference;
/// * for `k` in 3..=5, circuit graphs on at least `k^{log2 3}` vertices have
///   a cycle of length at least `k` (`ceil(trials / 2)` graphs per `k`).
pub fn verify_lemma_suite(
    seed: u64,
    trials: usize,
    mutant: Option<Mutant>,
    workers: usize,
) -> VerificationReport {
    type Job = (String, Descriptor, PlaneGraph, usize);
    let mut jobs: Vec<Result<Job>> = Vec::new();
    for i in 0..trials as u64 {
        let n = 5 + (i as usize % 36);
        let target = (i % 6) as usize;
        let s = mix(seed, 1, i);
        jobs.push(random_two_connected(n, target, s).map(|(g, _)| {
            (
                "region".into(),
                Descriptor::new("random-2c", n, s).with("target_m", target),
                g,
                0,
            )
        }));
        let n = 4 + (i as usize % 37);
        let target = (i % 8) as usize;
        let s = mix(seed, 2, i);
        jobs.push(random_two_connected(n, target, s).map(|(g, _)| {
            (
                "joinable".into(),
                Descriptor::new("random-2c", n, s).with("target_m", target),
                g,
                0,
            )
        }));
        let n = 4 + (i as usize % 37);
        let s = mix(seed, 3, i);
        jobs.push(
            random_near_triangulation(n, s)
                .map(|g| ("lengths".into(), Descriptor::new("near-tri", n, s), g, 0)),
        );
    }
    for k in 3..=5usize {
        let lo = long_cycle_min_order(k).max(4);
        for i in 0..trials.div_ceil(2) as u64 {
            let n = lo + (i as usize % (41 - lo));
            jobs.push(
                circuit_instance(n, mix(seed, 10 + k as u64, i), i)
                    .map(|(d, g)| ("long-cycle".into(), d.with("k", k), g, k)),
            );
        }
    }
    let records: Vec<CheckRecord> = on_pool(workers, || {
        jobs.par_iter()
            .map(|job| match job {
                Err(e) => record(
                    "lemmas",
                    &Descriptor::new("setup", 0, seed),
                    "generate",
                    None,
                    || (Outcome::Fail, e.to_string()),
                ),
                Ok((check, d, g, k)) => {
                    record("lemmas", d, check, Some(g), || match check.as_str() {
                        "region" => region_check(g),
                        "joinable" => joinable_check(g, mutant),
                        "lengths" => lengths_check(g),
                        _ => long_cycle_check(g, *k),
                    })
                }
            })
            .collect()
    });
    VerificationReport::new("lemmas", records)
}

/// Induced adjacency on `vs`, renumbered.
fn induced(g: &PlaneGraph, vs: &[usize]) -> Vec<Vec<usize>> {
    vs.iter()
        .map(|&v| {
            let mut r: Vec<usize> = g
                .neighbors(v)
                .iter()
                .filter_map(|w| vs.iter().position(|x| x == w))
                .collect();
            r.sort_unstable();
            r
        })
        .collect()
}

/// Order, edge count, lobe circumference and the absence of two disjoint
/// `k`-cycles for each glued construction.
pub fn verify_glued(
    ks: &[usize],
    ns: &[usize],
    budget: Budget,
    workers: usize,
) -> VerificationReport {
    let pairs: Vec<(usize, usize)> = ks
        .iter()
        .flat_map(|&k| ns.iter().map(move |&n| (k, n)))
        .collect();
    let records: Vec<CheckRecord> = on_pool(workers, || {
        pairs
            .par_iter()
            .flat_map_iter(|&(k, n)| {
                let d = Descriptor::new("glued", n, 0).with("k", k);
                let (g, spec) = match glued_construction(n, k) {
                    Ok(x) => x,
                    Err(e @ (Error::KTooSmall(_) | Error::BadOrder(_))) => {
                        return vec![record("glued", &d, "construct", None, || {
                            (Outcome::NotApplicable, e.to_string())
                        })];
                    }
                    Err(e) => {
                        return vec![record("glued", &d, "construct", None, || {
                            (Outcome::Fail, e.to_string())
                        })];
                    }
                };
                let g = &g;
                let lower = 3 * n as i64 - 12 - spec.t_copies as i64;
                vec![
                    record("glued", &d, "order", Some(g), || {
                        let got = g.vertex_count();
                        let o = if got == n {
                            Outcome::Pass
                        } else {
                            Outcome::Fail
                        };
                        (o, format!("order {got}"))
                    }),
                    record("glued", &d, "edge-count", Some(g), || {
                        let e = g.edge_count() as i64;
                        let o = if e >= lower {
                            Outcome::Pass
                        } else {
                            Outcome::Fail
                        };
                        (o, format!("{e} edges, need {lower}"))
                    }),
                    record("glued", &d, "lobe-circumference", Some(g), || {
                        for (i, lobe) in glued_lobes(&spec).iter().enumerate() {
                            match circumference_upper_check_in(&induced(g, lobe), k, budget) {
                                Ok(true) => {}
                                Ok(false) => {
                                    return (
                                        Outcome::Fail,
                                        format!("lobe {i} has a cycle of length >= {k}"),
                                    )
                                }
                                Err(_) => return (Outcome::Budget, format!("lobe {i} undecided")),
                            }
                        }
                        (
                            Outcome::Pass,
                            format!("{} lobes below {k}", spec.lobe_orders.len()),
                        )
                    }),
                    record("glued", &d, "no-two-disjoint", Some(g), || {
                        match two_disjoint_k_cycles_within(g, k, budget) {
                            Ok(None) => (Outcome::Pass, "none".into()),
                            Ok(Some(p)) => (
                                Outcome::Fail,
                                format!("found {:?} and {:?}", p.first.vertices, p.second.vertices),
                            ),
                            Err(_) => (Outcome::Budget, "undecided".into()),
                        }
                    }),
                ]
            })
            .collect()
    });
    VerificationReport::new("glued", records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::fixtures;

    #[test]
    fn empty_suite_passes() {
        let r = verify_lemma_suite(7, 0, None, 2);
        assert!(r.records.is_empty());
        assert!(r.passed());
    }

    #[test]
    fn lemma_suite_passes_and_mutant_fails() {
        let r = verify_lemma_suite(3, 6, None, 2);
        assert!(r.passed(), "{}", r.to_table());
        assert!(r.count(Outcome::Pass) > 0);

        let bad = verify_lemma_suite(3, 6, Some(Mutant::JoinableOffByOne), 2);
        let f = bad.failures().next().expect("the mutant is caught");
        let g = replay(&f.descriptor).unwrap();
        assert_eq!(
            crate::io::write_text(&g),
            f.counterexample.as_ref().unwrap().graph
        );
    }

    #[test]
    fn extraction_skips_dense_instances() {
        let hex = fixtures::cycle(6);
        let case = ExtractionCase {
            descriptor: Descriptor::new("fixture", 6, 0),
            graph: hex,
            t: 4,
        };
        let r = verify_extraction(&[case], 1);
        assert_eq!(r.records[0].outcome, Outcome::NotApplicable);
        assert!(r.passed());
    }

    #[test]
    fn extraction_cases_pass() {
        let cases = extraction_cases(11, 4..=6, 10, 30).unwrap();
        assert_eq!(cases.len(), 30);
        let r = verify_extraction(&cases, 2);
        assert_eq!(r.count(Outcome::Pass), 30, "{}", r.to_table());
        for c in &cases {
            assert_eq!(
                crate::io::write_text(&replay(&c.descriptor).unwrap()),
                crate::io::write_text(&c.graph)
            );
        }
    }

    #[test]
    fn glued_small_k_is_not_applicable() {
        let r = verify_glued(&[5], &[20], Budget::millis(1000), 1);
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.records[0].outcome, Outcome::NotApplicable);
    }

    #[test]
    fn glued_checks_pass() {
        let r = verify_glued(&[7], &[12, 19], Budget::millis(20_000), 2);
        assert_eq!(r.records.len(), 8);
        assert_eq!(r.count(Outcome::Pass), 8, "{}", r.to_table());
        assert_eq!(r.to_json_lines().lines().count(), 8);
    }

    #[test]
    fn descriptors_sort_and_print() {
        let a = Descriptor::new("glued", 20, 0).with("k", 7);
        assert_eq!(a.to_string(), "glued n=20 seed=0 k=7");
        assert!(Descriptor::new("glued", 12, 0) < a);
        assert!(replay(&Descriptor::new("nope", 3, 0)).is_err());
    }
}
