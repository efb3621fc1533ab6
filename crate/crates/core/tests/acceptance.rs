//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::time::{Duration, Instant};

use hallfrat::corpus::{run_corpus, CorpusReport, RunConfig};
use hallfrat::frattini::remark1_report;
use hallfrat::product_symbolic::remark2_report;
use hallfrat::subgroup_enum::SubgroupLattice;
use hallfrat::PermGroup;

struct Gate {
    failed: usize,
}

impl Gate {
    fn report(&mut self, n: u32, name: &str, ok: bool, detail: String) {
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("{tag} criterion {n}: {name} ({detail})");
        if !ok {
            self.failed += 1;
        }
    }
}

fn suites_clean(r: &CorpusReport, suites: &[&str], max: u64) -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for s in suites {
        let t = r.tally_up_to(s, max);
        ok &= t.checked > 0 && t.violations == 0;
        parts.push(format!("{s} {}/{}", t.checked - t.violations, t.checked));
    }
    (ok, parts.join(", "))
}

fn main() {
    let mut gate = Gate { failed: 0 };

    let start = Instant::now();
    let r1 = remark1_report();
    let t1 = start.elapsed();
    match r1 {
        Ok(r) => gate.report(
            1,
            "GL(3,2) with the duality automorphism",
            r.reproduces() && t1 < Duration::from_secs(60),
            format!(
                "{} classes of order {}, {} subgroups of order {} in the extension, {:.2?}",
                r.socle_hall_classes.len(),
                r.hall_order,
                r.group_subgroups_of_hall_order,
                r.group_hall_order,
                t1
            ),
        ),
        Err(e) => gate.report(1, "GL(3,2) with the duality automorphism", false, e.to_string()),
    }

    let start = Instant::now();
    let r2 = remark2_report();
    let t2 = start.elapsed();
    match r2 {
        Ok(r) => gate.report(
            2,
            "fivefold power of GL(3,2) with the block shift",
            r.reproduces() && t2 < Duration::from_secs(10),
            format!(
                "{} classes, {} orbits, {} stable, {} small cross-checks, {:.2?}",
                r.a_classes,
                r.orbit_count,
                r.stable_classes.len(),
                r.cross_checks.len() + r.power_checks.len(),
                t2
            ),
        ),
        Err(e) => gate.report(2, "fivefold power of GL(3,2) with the block shift", false, e.to_string()),
    }

    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let start = Instant::now();
    let corpus = run_corpus(&RunConfig::default(), workers);
    let tc = start.elapsed();
    let corpus = match corpus {
        Ok(c) => c,
        Err(e) => {
            for n in 3..=8 {
                gate.report(n, "corpus", false, e.to_string());
            }
            std::process::exit(1);
        }
    };
    for v in corpus.all_violations().take(20) {
        eprintln!("violation: {} [{}] {}", v.group, v.suite, v.detail);
    }

    let (ok, detail) = suites_clean(&corpus, &["theorem", "theorem_refusal"], 400);
    gate.report(
        3,
        "Frattini argument over the corpus",
        ok && tc < Duration::from_secs(15 * 60),
        format!("{detail}, corpus time {:.1?}", tc),
    );

    let oracle = corpus.tally("theorem");
    let constructive = corpus.tally("constructive");
    gate.report(
        4,
        "constructive path",
        constructive.violations == 0 && constructive.checked == oracle.checked && oracle.checked > 0,
        format!("{}/{} constructive runs clean", constructive.checked - constructive.violations, oracle.checked),
    );

    let (ok, detail) = suites_clean(
        &corpus,
        &[
            "lemma_base",
            "lemma_base1",
            "lemma_hall_exist",
            "lemma_lift",
            "lemma_inv_gross",
            "lemma_main1",
            "lemma_simple",
            "lemma_main",
        ],
        u64::MAX,
    );
    let ks = corpus.k_values.iter().all(|k| [1, 2, 3, 4, 9].contains(k));
    gate.report(
        5,
        "lemma suites",
        ok && ks && !corpus.k_values.is_empty(),
        format!("{detail}; k values seen {:?}", corpus.k_values),
    );

    let (ok, detail) = suites_clean(&corpus, &["cor_c_pi_closure", "cor_e_pi_criterion"], u64::MAX);
    let coprime = corpus.tally("cor_coprime");
    let coprime_ok = coprime.checked > 0 && coprime.violations == 0;
    let curated = ["Dihedral(7)", "DirectProduct(Cyclic(2), Cyclic(2), Cyclic(2))"]
        .iter()
        .all(|g| corpus.coprime.iter().any(|c| c.group == *g && c.ok));
    gate.report(
        6,
        "corollary suites",
        ok && coprime_ok && curated,
        format!("{detail}, cor_coprime {}/{}", coprime.checked - coprime.violations, coprime.checked),
    );

    let (ok, detail) = suites_clean(&corpus, &["classical_frattini"], u64::MAX);
    gate.report(7, "Sylow specialization", ok, detail);

    let (ok, detail) = suites_clean(&corpus, &["chain_order", "transversal", "sylow_count"], u64::MAX);
    let s4 = SubgroupLattice::enumerate(&PermGroup::symmetric(4)).unwrap();
    let s4_ok = s4.classes().len() == 11 && s4.total_subgroups() == 30;
    gate.report(
        8,
        "stabilizer chains and subgroup counts",
        ok && s4_ok,
        format!(
            "{detail}, Sym(4): {} classes, {} subgroups",
            s4.classes().len(),
            s4.total_subgroups()
        ),
    );

    eprintln!("{}", corpus.timing_table());
    if gate.failed > 0 {
        println!("{} criteria failed", gate.failed);
        std::process::exit(1);
    }
}
