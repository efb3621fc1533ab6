use std::collections::{BTreeMap, BTreeSet};
use std::time::Duration;

use super::{GroupReport, QueryRecord, RunConfig, Tally, Violation, SUITES, SYLOW_MAX_ORDER};
use crate::config::Bounds;
use crate::constructions::build_str;
use crate::error::{Error, Result};
use crate::frattini::{
    e_pi_criterion, find_fusion_stable_hall, frattini_constructive, frattini_oracle,
    verify_c_pi_closure,
};
use crate::hall::{
    extend_hall_over_pi_quotient, hall_classes, hall_intersection_check, is_hall, is_pi_separable,
    k_pi, lift_hall_from_quotient, pi_part, prime_divisors, HallAnalysis, HallStatus, PrimeSet,
};
use crate::perm_core::{
    are_conjugate, class_is_stable, induced_aut_group, intersection, is_simple,
    minimal_normal_subgroups, normal_subgroups, normalizer, product_order, quotient_action,
    right_transversal, socle_components, PermGroup, SocleComponents,
};
use crate::subgroup_enum::{subgroup_classes, subgroups_of_order, sylow, SubgroupClass, SubgroupLattice};

struct Recorder {
    group: String,
    tallies: BTreeMap<String, Tally>,
    violations: Vec<Violation>,
}

impl Recorder {
    /// Records one check. `Err` counts as a violation as well.
    fn check(&mut self, suite: &str, outcome: Result<bool>, detail: impl FnOnce() -> String) {
        let t = self.tallies.entry(suite.to_string()).or_default();
        t.checked += 1;
        let failure = match outcome {
            Ok(true) => None,
            Ok(false) => Some(detail()),
            Err(e) => Some(format!("{}: {e}", detail())),
        };
        if let Some(detail) = failure {
            t.violations += 1;
            self.violations.push(Violation {
                group: self.group.clone(),
                suite: suite.to_string(),
                detail,
            });
        }
    }
}

fn is_almost_simple(g: &PermGroup) -> Result<Option<PermGroup>> {
    let mins = minimal_normal_subgroups(g)?;
    if mins.len() == 1 && !mins[0].is_abelian() && is_simple(&mins[0])? {
        return Ok(mins.into_iter().next());
    }
    Ok(None)
}

/// Runs every applicable suite on one corpus expression.
pub fn run_group(expr: &str, config: &RunConfig) -> GroupReport {
    let mut rec = Recorder {
        group: expr.to_string(),
        tallies: SUITES
            .iter()
            .filter(|s| **s != "cor_coprime")
            .map(|s| (s.to_string(), Tally::default()))
            .collect(),
        violations: Vec::new(),
    };
    let mut report = GroupReport {
        group: expr.to_string(),
        order: 0,
        degree: 0,
        almost_simple: false,
        properties_run: false,
        normal_subgroups: 0,
        tallies: BTreeMap::new(),
        k_values: BTreeSet::new(),
        queries: Vec::new(),
        violations: Vec::new(),
        elapsed: Duration::ZERO,
    };
    match build_str(expr) {
        Ok(b) => {
            let g = b.group;
            report.order = g.order();
            report.degree = g.degree();
            if let Err(e) = run_all(&g, config, &mut rec, &mut report) {
                rec.check("setup", Err(e), || "group-level computation failed".into());
            }
        }
        Err(e) => rec.check("setup", Err(e), || "building the group failed".into()),
    }
    report.tallies = rec.tallies;
    report.violations = rec.violations;
    report
}

fn run_all(g: &PermGroup, config: &RunConfig, rec: &mut Recorder, report: &mut GroupReport) -> Result<()> {
    let order = g.order();
    if order <= Bounds::global().closure_oracle {
        let naive = g.naive_closure_size(order as usize + 1);
        rec.check("chain_order", Ok(naive == Some(order as usize)), || {
            format!("chain order {order}, closure {naive:?}")
        });
    }
    if order > config.property_max_order {
        return Ok(());
    }
    report.properties_run = true;
    let subgroups = subgroup_classes(g)?;
    trust_checks(g, &subgroups, rec)?;

    let normals = normal_subgroups(g)?;
    report.normal_subgroups = normals.len();
    let socle = is_almost_simple(g)?;
    report.almost_simple = socle.is_some();
    let mins = minimal_normal_subgroups(g)?;

    for pi in config.pi_policy.sets_for(order) {
        let analysis = hall_classes(g, &pi)?;
        let in_e = analysis.status.is_e();
        if is_pi_separable(g, &pi)? {
            rec.check("lemma_base1", Ok(analysis.status == HallStatus::C), || {
                format!("{pi}-separable but {} Hall classes", analysis.classes.len())
            });
        }
        for (ai, a) in normals.iter().enumerate() {
            let q = normal_queries(g, a, ai, &pi, &analysis, rec)?;
            report.queries.push(q);
            hall_exist(g, a, ai, &pi, rec)?;
        }
        if in_e {
            inv_gross(g, &mins, &pi, rec)?;
            if let Some(s) = &socle {
                if let Some(k) = simple_and_main(g, s, &subgroups, &pi, rec)? {
                    report.k_values.insert(k);
                }
            }
        }
    }
    Ok(())
}

fn trust_checks(g: &PermGroup, subgroups: &[SubgroupClass], rec: &mut Recorder) -> Result<()> {
    for c in subgroups {
        let h = &c.representative;
        let t = right_transversal(g, h).map(|t| t.len() as u64 * h.order() == g.order());
        rec.check("transversal", t, || format!("transversal of a subgroup of order {}", h.order()));
    }
    for p in prime_divisors(g.order()) {
        let target = pi_part(g.order(), &PrimeSet::single(p)?);
        let classes = subgroups_of_order(g, target)?;
        let count = classes.iter().map(|c| c.class_size).sum::<u64>();
        let s = sylow(g, p)?;
        let index = g.order() / normalizer(g, &s)?.order();
        rec.check(
            "sylow_count",
            Ok(classes.len() == 1 && count % p == 1 && s.order() == target && index == count),
            || format!("p = {p}: {} classes, {count} subgroups, |G:N(P)| = {index}", classes.len()),
        );
    }
    Ok(())
}

fn normal_queries(
    g: &PermGroup,
    a: &PermGroup,
    ai: usize,
    pi: &PrimeSet,
    analysis: &HallAnalysis,
    rec: &mut Recorder,
) -> Result<QueryRecord> {
    let ctx = || format!("A #{ai} (order {}), pi {pi}", a.order());
    let in_e = analysis.status.is_e();
    let mut record = QueryRecord {
        normal_index: ai,
        normal_order: a.order(),
        pi: pi.clone(),
        status: analysis.status,
        oracle: None,
        constructive: None,
    };

    let (verdict, witness) = e_pi_criterion(g, a, pi)?;
    rec.check("cor_e_pi_criterion", Ok(verdict == in_e), || {
        format!("{}: criterion says {verdict}, direct says {in_e}", ctx())
    });
    if let Some(w) = &witness {
        rec.check("cor_e_pi_criterion", class_is_stable(g, a, w), ctx);
    }

    if !in_e {
        let refused = matches!(frattini_oracle(g, a, pi), Err(Error::NotEPi { .. }));
        rec.check("theorem_refusal", Ok(refused), ctx);
        return Ok(record);
    }

    match frattini_oracle(g, a, pi) {
        Ok(w) => {
            let ok = w.checks.all() && is_hall(a, &w.h, pi);
            rec.check("theorem", Ok(ok), || format!("{}: flags {:?}", ctx(), w.checks));
            record.oracle = Some(w.summary());
            let listed: Vec<u64> = pi.listed().collect();
            if listed.len() == 1 && !pi.is_complement() && g.order() <= SYLOW_MAX_ORDER {
                let p = listed[0];
                rec.check("classical_frattini", classical(g, a, p, &w.h), ctx);
            }
        }
        Err(e) => rec.check("theorem", Err(e), ctx),
    }
    match frattini_constructive(g, a, pi) {
        Ok(w) => {
            let independent = class_is_stable(g, a, &w.h).map(|s| s && is_hall(a, &w.h, pi));
            let ok = independent.map(|s| s && w.checks.all());
            rec.check("constructive", ok, || format!("{}: flags {:?}", ctx(), w.checks));
            record.constructive = Some(w.summary());
        }
        Err(e) => rec.check("constructive", Err(e), ctx),
    }

    let epi = quotient_action(g, a)?;
    for h in analysis.representatives() {
        rec.check("lemma_base", hall_intersection_check(g, a, h, pi).map(|_| true), ctx);
        if analysis.status == HallStatus::C {
            rec.check("cor_c_pi_closure", verify_c_pi_closure(g, a, h, pi), ctx);
        }
    }
    let quotient = hall_classes(epi.image(), pi)?;
    rec.check("lemma_lift", Ok(quotient.status.is_e()), || format!("{}: G/A not in E_pi", ctx()));
    for kbar in quotient.representatives() {
        let lifted = lift_hall_from_quotient(&epi, kbar, pi).and_then(|h| {
            let k = epi.preimage(kbar)?;
            Ok(is_hall(g, &h, pi) && product_order(&h, a)? == k.order() && k.contains_group(&h))
        });
        rec.check("lemma_lift", lifted, ctx);
    }
    Ok(record)
}

/// `G = A N_G(S)` for an independently computed Sylow subgroup `S` of `A`,
/// and the oracle's witness lies in the class of `S`.
fn classical(g: &PermGroup, a: &PermGroup, p: u64, h: &PermGroup) -> Result<bool> {
    let s = sylow(a, p)?;
    let n = normalizer(g, &s)?;
    Ok(product_order(a, &n)? == g.order() && class_is_stable(g, a, &s)? && are_conjugate(a, &s, h)?)
}

/// For `|G:A|` a π-number: extension exists iff the class is stable, with
/// existence decided by scanning every π-Hall subgroup of `G`.
fn hall_exist(g: &PermGroup, a: &PermGroup, ai: usize, pi: &PrimeSet, rec: &mut Recorder) -> Result<()> {
    if !pi.is_pi_number(g.order() / a.order()) {
        return Ok(());
    }
    let target = pi_part(g.order(), pi);
    let lattice = SubgroupLattice::enumerate_dividing(g, target)?;
    let table = lattice.table();
    let mut members = Vec::new();
    for (i, c) in lattice.classes().iter().enumerate() {
        if c.order == target {
            members.extend(lattice.class_members(i));
        }
    }
    let a_bits = table
        .bits_of(a)
        .ok_or_else(|| Error::InvariantViolation("A is not in the element table".into()))?;
    for u in hall_classes(a, pi)?.representatives() {
        let u_bits = table
            .bits_of(u)
            .ok_or_else(|| Error::InvariantViolation("U is not in the element table".into()))?;
        let brute = members.iter().any(|h| {
            let mut m = h.clone();
            m.intersect_with(&a_bits);
            m == u_bits
        });
        let stable = class_is_stable(g, a, u)?;
        let extended = extend_hall_over_pi_quotient(g, a, u, pi)?;
        let sound = match &extended {
            Some(h) => is_hall(g, h, pi) && intersection(h, a)?.same_group(u),
            None => true,
        };
        rec.check(
            "lemma_hall_exist",
            Ok(sound && brute == stable && extended.is_some() == stable),
            || format!("A #{ai}, pi {pi}: brute {brute}, stable {stable}, extended {}", extended.is_some()),
        );
    }
    Ok(())
}

/// For every simple component `S` of a nonabelian minimal normal subgroup:
/// `Aut_G(S) ∈ E_π` and some Hall class of `S` is `Aut_G(S)`-stable.
fn inv_gross(g: &PermGroup, mins: &[PermGroup], pi: &PrimeSet, rec: &mut Recorder) -> Result<()> {
    for m in mins {
        let SocleComponents::NonAbelian(comps) = socle_components(g, m)? else {
            continue;
        };
        for s in &comps {
            let aut = induced_aut_group(g, s)?;
            let in_e = hall_classes(aut.image(), pi)?.status.is_e();
            rec.check("lemma_inv_gross", Ok(in_e), || {
                format!("Aut_G(S) for |S| = {} not in E_{pi}", s.order())
            });
            rec.check("lemma_main1", find_fusion_stable_hall(g, s, pi).map(|_| true), || {
                format!("|S| = {}, pi {pi}", s.order())
            });
        }
    }
    Ok(())
}

/// `k^G_π(S)` for the socle `S` of an almost simple `G`, and orbit lengths of
/// every subgroup of `G` on the classes counted by it.
fn simple_and_main(
    g: &PermGroup,
    s: &PermGroup,
    subgroups: &[SubgroupClass],
    pi: &PrimeSet,
    rec: &mut Recorder,
) -> Result<Option<usize>> {
    let (k, omega) = match k_pi(g, s, pi) {
        Ok(x) => x,
        Err(e) => {
            rec.check("lemma_simple", Err(e), || format!("k_pi for pi {pi}"));
            return Ok(None);
        }
    };
    rec.check(
        "lemma_simple",
        Ok([1, 2, 3, 4, 9].contains(&k) && pi.is_pi_number(k as u64)),
        || format!("pi {pi}: k = {k}"),
    );
    // the action of an element on the classes in omega
    let act = |x: &crate::perm_core::Perm| -> Result<Vec<usize>> {
        let mut images = Vec::with_capacity(omega.len());
        for c in &omega {
            let y = c.representative.conjugate(x);
            let mut found = None;
            for (j, d) in omega.iter().enumerate() {
                if are_conjugate(s, &y, &d.representative)? {
                    found = Some(j);
                    break;
                }
            }
            images.push(found.ok_or_else(|| {
                Error::InvariantViolation("conjugate class lies outside omega".into())
            })?);
        }
        Ok(images)
    };
    let mut gen_images: BTreeMap<Vec<String>, Vec<usize>> = BTreeMap::new();
    for t in subgroups {
        let t = &t.representative;
        let perms: Vec<Vec<usize>> = t
            .generators()
            .iter()
            .map(|x| {
                let key = vec![x.to_cycle_string()];
                if let Some(p) = gen_images.get(&key) {
                    return Ok(p.clone());
                }
                let p = act(x)?;
                gen_images.insert(key, p.clone());
                Ok(p)
            })
            .collect::<Result<_>>()?;
        let lengths = orbit_lengths(k, &perms);
        let ok = if k != 9 {
            lengths.iter().all(|&l| pi.is_pi_number(l as u64))
        } else {
            lengths.iter().any(|&l| pi.is_pi_number(l as u64))
        };
        rec.check("lemma_main", Ok(ok), || {
            format!("pi {pi}: subgroup of order {} has orbit lengths {lengths:?}", t.order())
        });
    }
    Ok(Some(k))
}

fn orbit_lengths(n: usize, perms: &[Vec<usize>]) -> Vec<usize> {
    let mut seen = vec![false; n];
    let mut lengths = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut len = 0;
        while let Some(x) = stack.pop() {
            len += 1;
            for p in perms {
                if !seen[p[x]] {
                    seen[p[x]] = true;
                    stack.push(p[x]);
                }
            }
        }
        lengths.push(len);
    }
    lengths
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_lengths_of_generators() {
        assert_eq!(orbit_lengths(4, &[vec![1, 0, 2, 3]]), vec![2, 1, 1]);
        assert_eq!(orbit_lengths(3, &[]), vec![1, 1, 1]);
    }

    #[test]
    fn sym5_runs_clean() {
        let r = run_group("Sym(5)", &RunConfig::default());
        assert!(r.violations.is_empty(), "{:#?}", r.violations);
        assert!(r.almost_simple);
        assert!(r.tallies["lemma_main"].checked > 0);
        assert!(r.tallies["lemma_hall_exist"].checked > 0);
        assert!(r.k_values.iter().all(|k| [1, 2, 3, 4, 9].contains(k)));
    }
}
