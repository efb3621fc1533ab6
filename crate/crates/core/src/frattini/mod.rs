//! The Frattini argument for Hall subgroups: for `A ⊴ G` with `G ∈ E_π`,
//! some π-Hall subgroup `H` of `A` has `G = A N_G(H)`. Computed by search
//! (oracle) and by the inductive construction, plus the corollaries.

mod constructive;
mod remark1;
mod witness;

pub use constructive::{
    build_invariant_product_hall, conjugate_complements, find_fusion_stable_hall,
    schur_zassenhaus_complement,
};
pub use remark1::{remark1_report, Remark1Report};
pub use witness::{Case, Checks, FrattiniWitness, Method, TraceStep, WitnessSummary};

use crate::constructions::{semidirect_by_maps, BuiltGroup};
use crate::error::{Error, Result};
use crate::hall::{hall_classes, is_hall, HallStatus, PrimeSet};
use crate::perm_core::{
    class_is_stable, conjugacy_witness, ensure_normal, gcd, intersection, quotient_action, Perm,
    PermGroup,
};
use crate::subgroup_enum::subgroups_of_order;
use constructive::Solver;
use witness::evaluate;

fn require_e_pi(g: &PermGroup, pi: &PrimeSet) -> Result<()> {
    if !hall_classes(g, pi)?.status.is_e() {
        return Err(Error::NotEPi { pi: pi.to_string() });
    }
    Ok(())
}

/// The first Hall class of `A` (in canonical order) that every generator of
/// `G` maps to itself.
pub fn frattini_oracle(g: &PermGroup, a: &PermGroup, pi: &PrimeSet) -> Result<FrattiniWitness> {
    ensure_normal(g, a)?;
    require_e_pi(g, pi)?;
    let classes = hall_classes(a, pi)?.classes;
    let mut stable = Vec::new();
    for (i, c) in classes.iter().enumerate() {
        if class_is_stable(g, a, &c.representative)? {
            stable.push(i);
        }
    }
    let first = *stable.first().ok_or_else(|| {
        Error::NoWitness(format!(
            "none of the {} Hall classes of A is G-stable",
            classes.len()
        ))
    })?;
    let h = classes[first].representative.clone();
    let (normalizer, checks) = evaluate(g, a, &h, pi)?;
    Ok(FrattiniWitness {
        a: a.clone(),
        h,
        normalizer,
        checks,
        method: Method::Oracle,
        trace: Vec::new(),
        stable_classes: stable,
    })
}

/// The inductive construction over minimal normal subgroups, quotients and
/// Schur–Zassenhaus complements.
pub fn frattini_constructive(
    g: &PermGroup,
    a: &PermGroup,
    pi: &PrimeSet,
) -> Result<FrattiniWitness> {
    ensure_normal(g, a)?;
    require_e_pi(g, pi)?;
    let mut solver = Solver {
        pi,
        trace: Vec::new(),
    };
    let h = solver.solve(g, a, 0)?;
    if !is_hall(a, &h, pi) {
        return Err(Error::InvariantViolation("constructed H is not Hall in A".into()));
    }
    let (normalizer, checks) = evaluate(g, a, &h, pi)?;
    let mut trace = solver.trace;
    trace.reverse();
    Ok(FrattiniWitness {
        a: a.clone(),
        h,
        normalizer,
        checks,
        method: Method::Constructive,
        trace,
        stable_classes: Vec::new(),
    })
}

/// For `G ∈ C_π`, `A ⊴ G` and `H` π-Hall in `G`: whether `HA ∈ C_π`.
pub fn verify_c_pi_closure(
    g: &PermGroup,
    a: &PermGroup,
    h: &PermGroup,
    pi: &PrimeSet,
) -> Result<bool> {
    ensure_normal(g, a)?;
    if hall_classes(g, pi)?.status != HallStatus::C {
        return Err(Error::NotCPi { pi: pi.to_string() });
    }
    if !is_hall(g, h, pi) {
        return Err(Error::Precondition("H is not a Hall subgroup of G".into()));
    }
    let ha = h.join_group(a)?;
    Ok(hall_classes(&ha, pi)?.status == HallStatus::C)
}

/// Evaluates "`A ∈ E_π`, `G/A ∈ E_π`, and some Hall subgroup of `A` has a
/// `G`-stable class", returning the verdict and the stable Hall subgroup.
pub fn e_pi_criterion(
    g: &PermGroup,
    a: &PermGroup,
    pi: &PrimeSet,
) -> Result<(bool, Option<PermGroup>)> {
    ensure_normal(g, a)?;
    let a_classes = hall_classes(a, pi)?;
    let quotient = quotient_action(g, a)?;
    let q_in_e = hall_classes(quotient.image(), pi)?.status.is_e();
    let mut witness = None;
    for c in a_classes.classes {
        if class_is_stable(g, a, &c.representative)? {
            witness = Some(c.representative);
            break;
        }
    }
    let verdict = a_classes.status.is_e() && q_in_e && witness.is_some();
    Ok((verdict, witness))
}

/// A π-Hall subgroup of `G` invariant under the automorphisms `auts`, each
/// given by the images of `G.generators`, whose group has order coprime to
/// `|G|`.
pub fn invariant_hall_under_coprime(
    g: &BuiltGroup,
    auts: &[Vec<Perm>],
    pi: &PrimeSet,
) -> Result<PermGroup> {
    let sd = semidirect_by_maps(g, auts)?;
    let star = &sd.built.group;
    let base = &sd.built.named["base"];
    let complement = &sd.built.named["complement"];
    if gcd(g.group.order(), complement.order()) != 1 {
        return Err(Error::Precondition(format!(
            "automorphism group of order {} is not coprime to |G| = {}",
            complement.order(),
            g.group.order()
        )));
    }
    require_e_pi(&g.group, pi)?;
    let w = frattini_oracle(star, base, pi)?;
    if !w.checks.product_covers_g {
        return Err(Error::InvariantViolation("G* ≠ G N_G*(H)".into()));
    }
    // a complement B to N_G(H) in N_G*(H), conjugated onto the automorphisms
    let n = &w.normalizer;
    let b = if complement.is_trivial() {
        PermGroup::trivial(star.degree())
    } else {
        subgroups_of_order(n, complement.order())?
            .into_iter()
            .map(|c| c.representative)
            .find(|b| intersection(b, base).map(|m| m.is_trivial()).unwrap_or(false))
            .ok_or_else(|| Error::InvariantViolation("N_G*(H) has no complement to N_G(H)".into()))?
    };
    let x = conjugacy_witness(star, &b, complement)?
        .ok_or_else(|| Error::InvariantViolation("complements to G in G* are not conjugate".into()))?;
    let hx = w.h.conjugate(&x);
    for alpha in &sd.auts {
        if !hx.generators().iter().all(|y| hx.contains(&y.conjugate_by(alpha))) {
            return Err(Error::InvariantViolation("H^x is not invariant".into()));
        }
    }
    let h = sd.subgroup_to_base(&hx)?;
    if !is_hall(&g.group, &h, pi) {
        return Err(Error::InvariantViolation("invariant subgroup is not Hall in G".into()));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_str;
    use crate::perm_core::{are_conjugate, normal_subgroups};
    use crate::subgroup_enum::sylow;

    fn pi(s: &str) -> PrimeSet {
        s.parse().unwrap()
    }

    fn grp(deg: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(deg, gens).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let s5 = PermGroup::symmetric(5);
        let a5 = PermGroup::alternating(5);
        let w = frattini_oracle(&s5, &a5, &pi("2,3")).unwrap();
        assert_eq!(w.h.order(), 12);
        assert_eq!(w.normalizer.order(), 24);
        assert!(w.checks.all());

        let s4 = PermGroup::symmetric(4);
        let w = frattini_oracle(&s4, &PermGroup::alternating(4), &pi("2")).unwrap();
        assert_eq!(w.h.order(), 4);
        assert_eq!(w.normalizer.order(), 24);
        assert!(w.checks.all());
    }

    #[test]
    fn remark1_group_is_refused() {
        let b = build_str("GL32Duality").unwrap();
        let socle = &b.named["socle"];
        assert!(matches!(
            frattini_oracle(&b.group, socle, &pi("2,3")),
            Err(Error::NotEPi { .. })
        ));
        assert!(matches!(
            frattini_constructive(&b.group, socle, &pi("2,3")),
            Err(Error::NotEPi { .. })
        ));
        assert!(matches!(
            find_fusion_stable_hall(&b.group, socle, &pi("2,3")),
            Err(Error::NotEPi { .. })
        ));
        let (verdict, witness) = e_pi_criterion(&b.group, socle, &pi("2,3")).unwrap();
        assert!(!verdict && witness.is_none());
    }

    #[test]
    fn constructive_s4_uses_schur_zassenhaus() {
        let s4 = PermGroup::symmetric(4);
        let w = frattini_constructive(&s4, &s4, &pi("3")).unwrap();
        assert_eq!(w.h.order(), 3);
        assert!(w.checks.all());
        assert!(w.trace.iter().any(|t| t.case == Case::SchurZassenhaus));
    }

    #[test]
    fn constructive_minimal_normal_route() {
        let s5 = PermGroup::symmetric(5);
        let a5 = PermGroup::alternating(5);
        let w = frattini_constructive(&s5, &a5, &pi("2,3")).unwrap();
        assert_eq!(w.trace[0].case, Case::MinimalNormal);
        assert!(w.checks.all());
    }

    #[test]
    fn constructive_agrees_with_oracle_on_small_groups() {
        let groups = [
            PermGroup::symmetric(4),
            PermGroup::symmetric(5),
            PermGroup::dihedral(6),
            grp(6, &["(1 2 3)", "(1 2)", "(4 5 6)", "(4 5)"]),
            grp(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]),
        ];
        for g in groups {
            for a in normal_subgroups(&g).unwrap() {
                for p in PrimeSet::all_subsets_for(g.order()) {
                    if !hall_classes(&g, &p).unwrap().status.is_e() {
                        continue;
                    }
                    let o = frattini_oracle(&g, &a, &p).unwrap();
                    let c = frattini_constructive(&g, &a, &p).unwrap();
                    assert!(o.checks.all() && c.checks.all(), "{g:?} {p}");
                    assert!(class_is_stable(&g, &a, &c.h).unwrap());
                }
            }
        }
    }

    #[test]
    fn sylow_specialization() {
        let s4 = PermGroup::symmetric(4);
        for a in normal_subgroups(&s4).unwrap() {
            for p in [2u64, 3] {
                let w = frattini_oracle(&s4, &a, &PrimeSet::single(p).unwrap()).unwrap();
                let syl = sylow(&a, p).unwrap();
                assert!(are_conjugate(&a, &w.h, &syl).unwrap());
            }
        }
    }

    #[test]
    fn product_hall_over_swap() {
        // (Alt(5) x Alt(5)):swap on 10 points
        let g = grp(
            10,
            &["(1 2 3)", "(1 2 3 4 5)", "(6 7 8)", "(6 7 8 9 10)", "(1 6)(2 7)(3 8)(4 9)(5 10)"],
        );
        let s = grp(10, &["(1 2 3)", "(1 2 3 4 5)"]);
        let u = hall_classes(&s, &pi("2,3")).unwrap().classes.remove(0).representative;
        let v = build_invariant_product_hall(&g, &s, &u, &pi("2,3")).unwrap();
        assert_eq!(v.order(), 144);
        assert_eq!(crate::perm_core::normal_closure(&g, &s).unwrap().order(), 3600);

        // S normal: the transversal is trivial and V = U
        let a5 = PermGroup::alternating(5);
        let u = hall_classes(&a5, &pi("2,3")).unwrap().classes.remove(0).representative;
        let v = build_invariant_product_hall(&PermGroup::symmetric(5), &a5, &u, &pi("2,3")).unwrap();
        assert!(v.same_group(&u));
    }

    #[test]
    fn fusion_stable_examples() {
        let s5 = PermGroup::symmetric(5);
        let a5 = PermGroup::alternating(5);
        assert_eq!(find_fusion_stable_hall(&s5, &a5, &pi("2,3")).unwrap().order(), 12);
        assert_eq!(find_fusion_stable_hall(&s5, &a5, &pi("2")).unwrap().order(), 4);
    }

    #[test]
    fn schur_zassenhaus_examples() {
        let a4 = PermGroup::alternating(4);
        let klein = grp(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let h = schur_zassenhaus_complement(&a4, &klein, &pi("3")).unwrap();
        assert_eq!(h.order(), 3);
        let all = subgroups_of_order(&a4, 3).unwrap();
        assert_eq!((all.len(), all[0].class_size), (1, 4));
        let other = h.conjugate(&Perm::parse_cycles(4, "(1 2)(3 4)").unwrap());
        let x = conjugate_complements(&a4, &klein, &h, &other).unwrap();
        assert!(h.conjugate(&x).same_group(&other));

        let c6 = PermGroup::cyclic(6);
        let c2 = grp(6, &["(1 4)(2 5)(3 6)"]);
        assert_eq!(schur_zassenhaus_complement(&c6, &c2, &pi("3")).unwrap().order(), 3);

        let s3 = PermGroup::symmetric(3);
        let c3 = grp(3, &["(1 2 3)"]);
        assert_eq!(schur_zassenhaus_complement(&s3, &c3, &pi("2")).unwrap().order(), 2);
        assert!(schur_zassenhaus_complement(&s3, &c3, &pi("3")).is_err());
    }

    #[test]
    fn corollary_examples() {
        let s5 = PermGroup::symmetric(5);
        let a5 = PermGroup::alternating(5);
        let h = s5.point_stabilizer(4);
        assert!(verify_c_pi_closure(&s5, &a5, &h, &pi("2,3")).unwrap());
        let one = PermGroup::trivial(5);
        assert!(verify_c_pi_closure(&s5, &one, &h, &pi("2,3")).unwrap());

        let (v, w) = e_pi_criterion(&s5, &a5, &pi("2,3")).unwrap();
        assert!(v);
        assert_eq!(w.unwrap().order(), 12);
        let (v, _) = e_pi_criterion(&s5, &s5, &pi("2,3")).unwrap();
        assert!(v);
    }

    #[test]
    fn coprime_invariant_hall() {
        let d7 = build_str("Dihedral(7)").unwrap();
        let r = d7.generators[0].clone();
        let s = d7.generators[1].clone();
        let h = invariant_hall_under_coprime(&d7, &[vec![r.pow(2), s.clone()]], &pi("2")).unwrap();
        assert_eq!(h.order(), 2);
        let alpha_h = h.generators()[0].clone();
        // the automorphism fixes the involutions s r^k with 2k = k mod 7, only s
        assert_eq!(alpha_h, s);

        let c7 = build_str("Cyclic(7)").unwrap();
        let g = c7.generators[0].clone();
        let h = invariant_hall_under_coprime(&c7, &[vec![g.pow(2)]], &pi("7")).unwrap();
        assert_eq!(h.order(), 7);

        let v4 = build_str("Dihedral(2)").unwrap();
        let (a, b) = (v4.generators[0].clone(), v4.generators[1].clone());
        let h = invariant_hall_under_coprime(&v4, &[vec![b.clone(), a.compose(&b)]], &pi("2")).unwrap();
        assert_eq!(h.order(), 4);

        assert!(invariant_hall_under_coprime(&v4, &[vec![b.clone(), a.clone()]], &pi("2")).is_err());
    }
}
