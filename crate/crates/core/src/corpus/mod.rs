//! Built-in test corpus and the property suites run over it.

mod suites;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::config::Bounds;
use crate::constructions::build_str;
use crate::error::{Error, Result};
use crate::frattini::{invariant_hall_under_coprime, WitnessSummary};
use crate::hall::{is_hall, prime_divisors, HallStatus, PrimeSet};
use crate::perm_core::Perm;

pub use suites::run_group;

/// Groups given by expression. Keys are the expressions themselves.
pub const CORPUS: &[&str] = &[
    "Sym(2)",
    "Sym(3)",
    "Sym(4)",
    "Sym(5)",
    "Sym(6)",
    "Alt(4)",
    "Alt(5)",
    "Alt(6)",
    "Cyclic(4)",
    "Cyclic(6)",
    "Cyclic(8)",
    "Cyclic(12)",
    "Cyclic(30)",
    "Dihedral(2)",
    "Dihedral(3)",
    "Dihedral(4)",
    "Dihedral(5)",
    "Dihedral(6)",
    "Dihedral(7)",
    "Dihedral(8)",
    "Dihedral(9)",
    "Dihedral(10)",
    "Dihedral(12)",
    "Dihedral(15)",
    "SemidirectByAut(Cyclic(5), [g -> g^2])",
    "SemidirectByAut(Cyclic(7), [g -> g^2])",
    "SemidirectByAut(Cyclic(13), [g -> g^3])",
    "SemidirectByAut(Cyclic(11), [g -> g^3])",
    "SemidirectByAut(Cyclic(11), [g -> g^2])",
    "SemidirectByAut(Cyclic(7), [g -> g^3], [g -> g^2])",
    "PSL(2,5)",
    "PSL(2,7)",
    "PSL(2,11)",
    "PGL(2,5)",
    "PGL(2,7)",
    "GL(3,2)",
    "GL32Duality",
    "DirectProduct(Sym(3), Sym(3))",
    "DirectProduct(Sym(3), Cyclic(5))",
    "DirectProduct(Alt(4), Cyclic(3))",
    "DirectProduct(Sym(4), Cyclic(2))",
    "DirectProduct(Dihedral(4), Sym(3))",
    "DirectProduct(Alt(5), Cyclic(2))",
    "DirectProduct(Alt(5), Cyclic(3))",
    "DirectProduct(Sym(3), Sym(4))",
    "DirectProduct(Alt(4), Alt(4))",
    "DirectProduct(GL(3,2), Cyclic(2))",
    "SemidirectByAut(Dihedral(2), [g1 -> g2, g2 -> g1*g2])",
    "SemidirectByAut(DirectProduct(Cyclic(3), Cyclic(3)), [g1 -> g2, g2 -> g1])",
    "SemidirectByAut(DirectProduct(Cyclic(2), Cyclic(2), Cyclic(2)), [g1 -> g2, g2 -> g3, g3 -> g1*g2])",
    "SemidirectByAut(DirectProduct(Cyclic(5), Cyclic(5)), [g1 -> g2, g2 -> g1^-1*g2^-1])",
    "ShiftProduct(Cyclic(2), 3)",
    "ShiftProduct(Cyclic(3), 2)",
    "ShiftProduct(Cyclic(3), 3)",
    "ShiftProduct(Sym(3), 2)",
    "ShiftProduct(Sym(3), 3)",
    "Alt(7)",
    "DirectProduct(Alt(5), Alt(5))",
];

/// Largest order for which the full property suites run by default.
pub const PROPERTY_MAX_ORDER: u64 = 720;
/// Largest order for the classical Sylow specialization.
pub const SYLOW_MAX_ORDER: u64 = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PiPolicy {
    /// Every subset of the primes dividing `|G|`.
    #[serde(rename = "all")]
    All,
    /// Only `{p}` for primes `p` dividing `|G|`.
    #[serde(rename = "singletons")]
    Singletons,
}

impl PiPolicy {
    pub fn sets_for(self, order: u64) -> Vec<PrimeSet> {
        match self {
            PiPolicy::All => PrimeSet::all_subsets_for(order),
            PiPolicy::Singletons => prime_divisors(order)
                .into_iter()
                .map(|p| PrimeSet::single(p).expect("divisors are prime"))
                .collect(),
        }
    }
}

impl fmt::Display for PiPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PiPolicy::All => "all",
            PiPolicy::Singletons => "singletons",
        })
    }
}

impl FromStr for PiPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(PiPolicy::All),
            "singletons" => Ok(PiPolicy::Singletons),
            other => Err(Error::Semantic(format!("unknown pi policy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    /// Groups above this order are skipped entirely.
    pub max_order: u64,
    /// Groups above this order only run the stabilizer-chain checks.
    pub property_max_order: u64,
    pub pi_policy: PiPolicy,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_order: Bounds::global().closure_oracle,
            property_max_order: PROPERTY_MAX_ORDER,
            pi_policy: PiPolicy::All,
        }
    }
}

impl RunConfig {
    pub fn with_max_order(mut self, max: u64) -> Self {
        self.max_order = max;
        self.property_max_order = self.property_max_order.min(max);
        self
    }
}

/// Suite names, in report order.
pub const SUITES: &[&str] = &[
    "chain_order",
    "transversal",
    "sylow_count",
    "theorem",
    "theorem_refusal",
    "constructive",
    "classical_frattini",
    "lemma_base",
    "lemma_base1",
    "lemma_hall_exist",
    "lemma_lift",
    "lemma_inv_gross",
    "lemma_main1",
    "lemma_simple",
    "lemma_main",
    "cor_c_pi_closure",
    "cor_e_pi_criterion",
    "cor_coprime",
];

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub checked: u64,
    pub violations: u64,
}

impl Tally {
    fn add(&mut self, other: Tally) {
        self.checked += other.checked;
        self.violations += other.violations;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub group: String,
    pub suite: String,
    pub detail: String,
}

/// One Frattini query `(G, A, π)`.
#[derive(Debug, Clone, Serialize)]
pub struct QueryRecord {
    pub normal_index: usize,
    pub normal_order: u64,
    pub pi: PrimeSet,
    pub status: HallStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<WitnessSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constructive: Option<WitnessSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupReport {
    pub group: String,
    pub order: u64,
    pub degree: usize,
    pub almost_simple: bool,
    pub properties_run: bool,
    pub normal_subgroups: usize,
    pub tallies: BTreeMap<String, Tally>,
    pub k_values: BTreeSet<usize>,
    pub queries: Vec<QueryRecord>,
    pub violations: Vec<Violation>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl GroupReport {
    pub fn violation_count(&self) -> u64 {
        self.tallies.values().map(|t| t.violations).sum()
    }
}

/// A curated coprime action: the base, automorphism images of its
/// generators (as words), and π.
#[derive(Debug, Clone, Serialize)]
pub struct CoprimeRecord {
    pub group: String,
    pub automorphism: String,
    pub pi: PrimeSet,
    pub hall_order: u64,
    pub hall_generators: Vec<String>,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

type AutBuilder = fn(&[Perm]) -> Vec<Perm>;

const COPRIME: &[(&str, &str, &str, AutBuilder)] = &[
    ("Dihedral(7)", "r -> r^2, s -> s", "2", |g| vec![g[0].pow(2), g[1].clone()]),
    ("Dihedral(7)", "r -> r^2, s -> s", "7", |g| vec![g[0].pow(2), g[1].clone()]),
    ("Dihedral(7)", "r -> r^2, s -> s", "", |g| vec![g[0].pow(2), g[1].clone()]),
    ("Cyclic(7)", "g -> g^2", "7", |g| vec![g[0].pow(2)]),
    ("Dihedral(2)", "a -> b, b -> ab", "2", |g| vec![g[1].clone(), g[0].compose(&g[1])]),
    (
        "DirectProduct(Cyclic(2), Cyclic(2), Cyclic(2))",
        "e1 -> e2, e2 -> e3, e3 -> e1 e2",
        "2",
        |g| vec![g[1].clone(), g[2].clone(), g[0].compose(&g[1])],
    ),
    (
        "DirectProduct(Cyclic(5), Cyclic(5))",
        "a -> b, b -> a^-1 b^-1",
        "5",
        |g| vec![g[1].clone(), g[0].inverse().compose(&g[1].inverse())],
    ),
    ("Cyclic(15)", "g -> g^2", "3", |g| vec![g[0].pow(2)]),
    ("Cyclic(15)", "g -> g^2", "5", |g| vec![g[0].pow(2)]),
];

pub fn run_coprime() -> Vec<CoprimeRecord> {
    COPRIME
        .iter()
        .map(|(expr, desc, pi_text, auts)| {
            let pi: PrimeSet = pi_text.parse().expect("curated prime sets parse");
            let outcome = build_str(expr).and_then(|n| {
                let images = auts(&n.generators);
                let h = invariant_hall_under_coprime(&n, &[images], &pi)?;
                let ok = is_hall(&n.group, &h, &pi);
                Ok((h, ok))
            });
            match outcome {
                Ok((h, ok)) => CoprimeRecord {
                    group: expr.to_string(),
                    automorphism: desc.to_string(),
                    pi,
                    hall_order: h.order(),
                    hall_generators: h.generator_strings(),
                    ok,
                    error: None,
                },
                Err(e) => CoprimeRecord {
                    group: expr.to_string(),
                    automorphism: desc.to_string(),
                    pi,
                    hall_order: 0,
                    hall_generators: Vec::new(),
                    ok: false,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub config: RunConfig,
    pub groups: Vec<GroupReport>,
    pub skipped: Vec<String>,
    pub coprime: Vec<CoprimeRecord>,
    pub totals: BTreeMap<String, Tally>,
    pub k_values: BTreeSet<usize>,
    pub violations: u64,
}

impl CorpusReport {
    pub fn tally(&self, suite: &str) -> Tally {
        self.totals.get(suite).copied().unwrap_or_default()
    }

    /// Tally of one suite over groups of order at most `max`.
    pub fn tally_up_to(&self, suite: &str, max: u64) -> Tally {
        let mut t = Tally::default();
        for g in self.groups.iter().filter(|g| g.order <= max) {
            if let Some(x) = g.tallies.get(suite) {
                t.add(*x);
            }
        }
        t
    }

    pub fn all_violations(&self) -> impl Iterator<Item = &Violation> {
        self.groups.iter().flat_map(|g| g.violations.iter())
    }

    /// Plain-text per-group timing table.
    pub fn timing_table(&self) -> String {
        let w = self.groups.iter().map(|g| g.group.len()).max().unwrap_or(5).max(5);
        let mut out = format!("{:<w$} {:>6} {:>9} {:>10}\n", "group", "order", "checks", "ms");
        for g in &self.groups {
            let checks: u64 = g.tallies.values().map(|t| t.checked).sum();
            out.push_str(&format!(
                "{:<w$} {:>6} {:>9} {:>10}\n",
                g.group,
                g.order,
                checks,
                g.elapsed.as_millis()
            ));
        }
        out
    }
}

/// Orders of the corpus groups, building each once.
fn corpus_orders() -> Vec<(String, Result<u64>)> {
    CORPUS
        .iter()
        .map(|e| (e.to_string(), build_str(e).map(|b| b.group.order())))
        .collect()
}

/// Runs every suite over the corpus on `workers` threads. Results are sorted
/// by (order, expression) regardless of completion order.
pub fn run_corpus(config: &RunConfig, workers: usize) -> Result<CorpusReport> {
    use rayon::prelude::*;

    let mut selected = Vec::new();
    let mut skipped = Vec::new();
    for (expr, order) in corpus_orders() {
        let order = order?;
        if order <= config.max_order {
            selected.push((order, expr));
        } else {
            skipped.push(expr);
        }
    }
    // largest first so the slow groups start early
    selected.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let mut groups: Vec<GroupReport> = pool.install(|| {
        selected
            .par_iter()
            .map(|(_, expr)| {
                let start = Instant::now();
                let mut r = run_group(expr, config);
                r.elapsed = start.elapsed();
                r
            })
            .collect()
    });
    groups.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.group.cmp(&b.group)));

    let coprime = run_coprime();
    let mut totals: BTreeMap<String, Tally> = SUITES.iter().map(|s| (s.to_string(), Tally::default())).collect();
    let mut k_values = BTreeSet::new();
    for g in &groups {
        for (suite, t) in &g.tallies {
            totals.entry(suite.clone()).or_default().add(*t);
        }
        k_values.extend(g.k_values.iter().copied());
    }
    let cop = totals.entry("cor_coprime".to_string()).or_default();
    for c in &coprime {
        cop.checked += 1;
        cop.violations += (!c.ok) as u64;
    }
    let violations = totals.values().map(|t| t.violations).sum();
    Ok(CorpusReport {
        config: config.clone(),
        groups,
        skipped,
        coprime,
        totals,
        k_values,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_expressions_build() {
        for (expr, order) in corpus_orders() {
            assert!(order.is_ok(), "{expr}: {order:?}");
        }
        let keys: BTreeSet<&str> = CORPUS.iter().copied().collect();
        assert_eq!(keys.len(), CORPUS.len());
    }

    #[test]
    fn policies() {
        assert_eq!(PiPolicy::All.sets_for(12).len(), 4);
        assert_eq!(PiPolicy::Singletons.sets_for(60).len(), 3);
        assert_eq!("singletons".parse::<PiPolicy>().unwrap(), PiPolicy::Singletons);
        assert!("some".parse::<PiPolicy>().is_err());
    }

    #[test]
    fn coprime_instances() {
        for c in run_coprime() {
            assert!(c.ok, "{c:?}");
        }
    }

    #[test]
    fn small_run_is_clean() {
        let cfg = RunConfig::default().with_max_order(24);
        let r = run_corpus(&cfg, 2).unwrap();
        let v: Vec<_> = r.all_violations().collect();
        assert!(v.is_empty(), "{v:#?}");
        assert_eq!(r.violations, 0);
        assert!(r.tally("theorem").checked > 0);
    }
}
