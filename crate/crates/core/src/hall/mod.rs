//! Hall subgroups: π-arithmetic, enumeration, E_π/C_π status, class fusion.

mod primes;

pub use primes::{is_prime, pi_part, prime_divisors, PrimeSet};

use std::collections::HashSet;

use serde::Serialize;

use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::perm_core::{
    class_is_stable, conjugacy_class_reps, ensure_normal, ensure_subgroup, intersection,
    is_subnormal, normal_closure_of, normalizer, product_order, quotient_action, Epimorphism,
    PermGroup,
};
use crate::subgroup_enum::{subgroups_of_order, Bits, ClassSummary, SubgroupClass, SubgroupLattice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HallStatus {
    /// No π-Hall subgroups.
    #[serde(rename = "NOT_E")]
    NotE,
    /// π-Hall subgroups exist in more than one class.
    #[serde(rename = "E_ONLY")]
    EOnly,
    /// π-Hall subgroups exist and are all conjugate.
    #[serde(rename = "C")]
    C,
}

impl HallStatus {
    pub fn from_count(n: usize) -> Self {
        match n {
            0 => HallStatus::NotE,
            1 => HallStatus::C,
            _ => HallStatus::EOnly,
        }
    }

    pub fn is_e(self) -> bool {
        self != HallStatus::NotE
    }

    pub fn as_str(self) -> &'static str {
        match self {
            HallStatus::NotE => "NOT_E",
            HallStatus::EOnly => "E_ONLY",
            HallStatus::C => "C",
        }
    }
}

#[derive(Debug, Clone)]
pub struct HallAnalysis {
    pub group: PermGroup,
    pub pi: PrimeSet,
    pub status: HallStatus,
    pub classes: Vec<SubgroupClass>,
    pub target_order: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct HallSummary {
    pub group_order: u64,
    pub pi: PrimeSet,
    pub status: HallStatus,
    pub target_order: u64,
    pub classes: Vec<ClassSummary>,
}

impl HallAnalysis {
    pub fn summary(&self) -> HallSummary {
        HallSummary {
            group_order: self.group.order(),
            pi: self.pi.clone(),
            status: self.status,
            target_order: self.target_order,
            classes: self.classes.iter().map(|c| c.summary()).collect(),
        }
    }

    pub fn representatives(&self) -> impl Iterator<Item = &PermGroup> {
        self.classes.iter().map(|c| &c.representative)
    }
}

/// `h` is a π-Hall subgroup of `g`.
pub fn is_hall(g: &PermGroup, h: &PermGroup, pi: &PrimeSet) -> bool {
    g.contains_group(h) && h.order() == pi_part(g.order(), pi)
}

fn ensure_hall(g: &PermGroup, h: &PermGroup, pi: &PrimeSet) -> Result<()> {
    ensure_subgroup(g, h)?;
    if h.order() != pi_part(g.order(), pi) {
        return Err(Error::Precondition(format!(
            "subgroup of order {} is not {pi}-Hall in a group of order {}",
            h.order(),
            g.order()
        )));
    }
    Ok(())
}

/// The π-Hall classes of `g`, by exact enumeration of subgroups of the
/// π-part order.
pub fn hall_classes(g: &PermGroup, pi: &PrimeSet) -> Result<HallAnalysis> {
    let target = pi_part(g.order(), pi);
    let classes = if target == 1 {
        vec![SubgroupClass {
            representative: PermGroup::trivial(g.degree()),
            class_size: 1,
        }]
    } else if target == g.order() {
        vec![SubgroupClass {
            representative: g.clone(),
            class_size: 1,
        }]
    } else {
        subgroups_of_order(g, target)?
    };
    Ok(HallAnalysis {
        group: g.clone(),
        pi: pi.clone(),
        status: HallStatus::from_count(classes.len()),
        classes,
        target_order: target,
    })
}

/// Hall classes of `g = f_1 × ... × f_r`, where the factors are pairwise
/// commuting subgroups of `g` with trivial pairwise intersections. Each Hall
/// subgroup of the product is the product of its intersections with the
/// factors, so classes are assembled factor by factor.
pub fn hall_classes_of_product(
    g: &PermGroup,
    factors: &[PermGroup],
    pi: &PrimeSet,
) -> Result<HallAnalysis> {
    let total: u64 = factors.iter().map(|f| f.order()).product();
    if total != g.order() || factors.iter().any(|f| !g.contains_group(f)) {
        return Err(Error::Precondition(
            "factors do not form a direct decomposition of the group".into(),
        ));
    }
    let per_factor: Vec<HallAnalysis> = factors
        .iter()
        .map(|f| hall_classes(f, pi))
        .collect::<Result<_>>()?;
    let count: u64 = per_factor.iter().map(|a| a.classes.len() as u64).product();
    Bounds::global().check_enumeration(count)?;
    let mut classes = vec![SubgroupClass {
        representative: PermGroup::trivial(g.degree()),
        class_size: 1,
    }];
    for a in &per_factor {
        let mut next = Vec::with_capacity(classes.len() * a.classes.len());
        for c in &classes {
            for f in &a.classes {
                next.push(SubgroupClass {
                    representative: c.representative.join_group(&f.representative)?,
                    class_size: c.class_size * f.class_size,
                });
            }
        }
        classes = next;
    }
    Ok(HallAnalysis {
        group: g.clone(),
        pi: pi.clone(),
        status: HallStatus::from_count(classes.len()),
        classes,
        target_order: pi_part(g.order(), pi),
    })
}

pub fn in_e_pi(g: &PermGroup, pi: &PrimeSet) -> Result<bool> {
    Ok(hall_classes(g, pi)?.status.is_e())
}

/// `(H ∩ A, HA/A)` for a normal subgroup `A` and a π-Hall subgroup `H` of
/// `G`, both checked to be π-Hall in their ambient groups.
pub fn hall_intersection_check(
    g: &PermGroup,
    a: &PermGroup,
    h: &PermGroup,
    pi: &PrimeSet,
) -> Result<(PermGroup, PermGroup)> {
    ensure_normal(g, a)?;
    ensure_hall(g, h, pi)?;
    let meet = intersection(h, a)?;
    let epi = quotient_action(g, a)?;
    let image = epi.image_of(h);
    if !is_hall(a, &meet, pi) {
        return Err(Error::InvariantViolation(format!(
            "H ∩ A has order {} but the {pi}-part of |A| is {}",
            meet.order(),
            pi_part(a.order(), pi)
        )));
    }
    if !is_hall(epi.image(), &image, pi) {
        return Err(Error::InvariantViolation(format!(
            "HA/A has order {} but the {pi}-part of |G/A| is {}",
            image.order(),
            pi_part(epi.image().order(), pi)
        )));
    }
    Ok((meet, image))
}

/// Largest normal subgroup of `g` whose order is a `pi`-number: the join of
/// the normal closures of elements that are `pi`-groups.
pub fn o_pi(g: &PermGroup, pi: &PrimeSet) -> Result<PermGroup> {
    let mut o = PermGroup::trivial(g.degree());
    for x in conjugacy_class_reps(g) {
        if x.is_identity() || o.contains(&x) || !pi.is_pi_number(x.order()) {
            continue;
        }
        let n = normal_closure_of(g, &[x])?;
        if pi.is_pi_number(n.order()) {
            o = o.join_group(&n)?;
        }
    }
    Ok(o)
}

/// Whether `g` has a normal series with π- and π'-factors, by repeatedly
/// factoring out `O_π` and `O_π'`.
pub fn is_pi_separable(g: &PermGroup, pi: &PrimeSet) -> Result<bool> {
    let mut current = g.clone();
    loop {
        if current.is_trivial() {
            return Ok(true);
        }
        let mut next = None;
        for view in [pi.clone(), pi.complement()] {
            let o = o_pi(&current, &view)?;
            if !o.is_trivial() {
                next = Some(quotient_action(&current, &o)?.image().clone());
                break;
            }
        }
        match next {
            Some(q) => current = q,
            None => return Ok(false),
        }
    }
}

/// Test hook: a π-separable group must have a single Hall class.
pub fn c_pi_check_separable(g: &PermGroup, pi: &PrimeSet) -> Result<bool> {
    if !is_pi_separable(g, pi)? {
        return Err(Error::Precondition(format!("group is not {pi}-separable")));
    }
    Ok(hall_classes(g, pi)?.status == HallStatus::C)
}

/// Every π-Hall subgroup of `g` as a bitset over the lattice table.
fn all_hall_members(g: &PermGroup, pi: &PrimeSet) -> Result<(SubgroupLattice, Vec<Bits>)> {
    let target = pi_part(g.order(), pi);
    let lattice = SubgroupLattice::enumerate_dividing(g, target)?;
    let mut members = Vec::new();
    for (i, c) in lattice.classes().iter().enumerate() {
        if c.order == target {
            members.extend(lattice.class_members(i));
        }
    }
    Ok((lattice, members))
}

/// Partitions subgroups (bitsets of one table) into orbits under
/// conjugation by the elements with indices `gens`.
fn orbits_under(lattice: &SubgroupLattice, subs: Vec<Bits>, gens: &[u32]) -> Vec<Vec<Bits>> {
    let table = lattice.table();
    let mut seen: HashSet<Bits> = HashSet::new();
    let mut orbits = Vec::new();
    for s in subs {
        if seen.contains(&s) {
            continue;
        }
        seen.insert(s.clone());
        let mut orbit = vec![s];
        let mut i = 0;
        while i < orbit.len() {
            for &x in gens {
                let c = table.conjugate_bits(&orbit[i], x);
                if seen.insert(c.clone()) {
                    orbit.push(c);
                }
            }
            i += 1;
        }
        orbits.push(orbit);
    }
    orbits
}

/// `k^G_π(A)`: the number of `A`-classes among the intersections `H ∩ A`,
/// `H` a π-Hall subgroup of `G`, together with those classes.
pub fn k_pi(g: &PermGroup, a: &PermGroup, pi: &PrimeSet) -> Result<(usize, Vec<SubgroupClass>)> {
    if !is_subnormal(g, a)? {
        return Err(Error::Precondition("A is not subnormal in G".into()));
    }
    let (lattice, members) = all_hall_members(g, pi)?;
    if members.is_empty() {
        return Err(Error::NotEPi { pi: pi.to_string() });
    }
    let table = lattice.table();
    let a_bits = table
        .bits_of(a)
        .ok_or_else(|| Error::InvariantViolation("A is not a subgroup of G".into()))?;
    let a_gens: Vec<u32> = a
        .generators()
        .iter()
        .map(|x| table.index_of(x).unwrap())
        .collect();
    let mut meets: Vec<Bits> = Vec::new();
    let mut seen: HashSet<Bits> = HashSet::new();
    for h in members {
        let mut m = h;
        m.intersect_with(&a_bits);
        if seen.insert(m.clone()) {
            meets.push(m);
        }
    }
    meets.sort_by(|x, y| x.ones().cmp(y.ones()));
    let orbits = orbits_under(&lattice, meets, &a_gens);
    let mut classes: Vec<SubgroupClass> = orbits
        .iter()
        .map(|o| SubgroupClass {
            representative: table.bits_to_group(&o[0]),
            class_size: o.len() as u64,
        })
        .collect();
    let target = pi_part(a.order(), pi);
    if let Some(c) = classes.iter().find(|c| c.order() != target) {
        return Err(Error::InvariantViolation(format!(
            "H ∩ A has order {} but the {pi}-part of |A| is {target}",
            c.order()
        )));
    }
    classes.sort_by_key(|c| c.class_size);
    Ok((classes.len(), classes))
}

fn ensure_pi_quotient(g: &PermGroup, a: &PermGroup, pi: &PrimeSet) -> Result<()> {
    ensure_normal(g, a)?;
    let index = g.order() / a.order();
    if !pi.is_pi_number(index) {
        return Err(Error::Precondition(format!(
            "|G:A| = {index} is not a {pi}-number"
        )));
    }
    Ok(())
}

/// For `A ⊴ G` with `G/A` a π-group and `U` π-Hall in `A`: some π-Hall `H`
/// of `G` with `H ∩ A = U`, which exists exactly when `U^G = U^A`.
pub fn extend_hall_over_pi_quotient(
    g: &PermGroup,
    a: &PermGroup,
    u: &PermGroup,
    pi: &PrimeSet,
) -> Result<Option<PermGroup>> {
    ensure_pi_quotient(g, a, pi)?;
    ensure_hall(a, u, pi)?;
    if !class_is_stable(g, a, u)? {
        return Ok(None);
    }
    // H ∩ A = U forces H ≤ N_G(U), and U lies in every π-Hall subgroup of
    // N_G(U) because it is a normal π-subgroup there
    let n = normalizer(g, u)?;
    let target = pi_part(g.order(), pi);
    let candidates = hall_classes(&n, pi)?;
    if candidates.target_order != target {
        return Err(Error::InvariantViolation(format!(
            "N_G(U) has {pi}-part {} but G has {target}",
            candidates.target_order
        )));
    }
    let h = candidates
        .classes
        .into_iter()
        .map(|c| c.representative)
        .next()
        .ok_or_else(|| {
            Error::InvariantViolation("U^G = U^A but N_G(U) has no Hall subgroup".into())
        })?;
    let meet = intersection(&h, a)?;
    if !meet.same_group(u) {
        return Err(Error::InvariantViolation(
            "Hall subgroup of N_G(U) does not meet A in U".into(),
        ));
    }
    Ok(Some(h))
}

/// A π-Hall subgroup `H` of `G` with `HA` the full preimage of the π-Hall
/// subgroup `kbar` of `G/A`.
pub fn lift_hall_from_quotient(
    epi: &Epimorphism,
    kbar: &PermGroup,
    pi: &PrimeSet,
) -> Result<PermGroup> {
    let g = epi.domain();
    if !in_e_pi(g, pi)? {
        return Err(Error::NotEPi { pi: pi.to_string() });
    }
    ensure_hall(epi.image(), kbar, pi)?;
    let k = epi.preimage(kbar)?;
    let target = pi_part(g.order(), pi);
    let analysis = hall_classes(&k, pi)?;
    let h = analysis
        .classes
        .into_iter()
        .map(|c| c.representative)
        .find(|h| h.order() == target)
        .ok_or_else(|| {
            Error::InvariantViolation("preimage of a Hall subgroup of G/A has no Hall subgroup of G".into())
        })?;
    if product_order(&h, epi.kernel())? != k.order() {
        return Err(Error::InvariantViolation("HA is not the preimage K".into()));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm_core::{are_conjugate, minimal_normal_subgroups};

    fn pi(s: &str) -> PrimeSet {
        s.parse().unwrap()
    }

    fn grp(deg: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(deg, gens).unwrap()
    }

    fn gl32() -> PermGroup {
        grp(7, &["(1 2 3 4 5 6 7)", "(1 2)(3 6)"])
    }

    #[test]
    fn hall_classes_examples() {
        let g = gl32();
        assert_eq!(g.order(), 168);
        let a = hall_classes(&g, &pi("2,3")).unwrap();
        assert_eq!(a.status, HallStatus::EOnly);
        assert_eq!(a.classes.len(), 2);
        assert!(a.classes.iter().all(|c| c.order() == 24 && c.class_size == 7));

        let a5 = PermGroup::alternating(5);
        assert_eq!(hall_classes(&a5, &pi("2,5")).unwrap().status, HallStatus::NotE);
        assert_eq!(hall_classes(&a5, &pi("2,3")).unwrap().status, HallStatus::C);

        let s4 = PermGroup::symmetric(4);
        for p in ["", "2", "3", "2,3"] {
            assert_eq!(hall_classes(&s4, &pi(p)).unwrap().status, HallStatus::C, "{p}");
        }
        let empty = hall_classes(&s4, &PrimeSet::empty()).unwrap();
        assert_eq!(empty.classes[0].order(), 1);
    }

    #[test]
    fn representatives_are_hall() {
        for g in [PermGroup::symmetric(5), gl32(), PermGroup::dihedral(15)] {
            for p in PrimeSet::all_subsets_for(g.order()) {
                let a = hall_classes(&g, &p).unwrap();
                for h in a.representatives() {
                    assert_eq!(h.order(), pi_part(g.order(), &p));
                    for q in p.restricted_to(g.order()) {
                        assert_ne!((g.order() / h.order()) % q, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn product_assembly_matches_enumeration() {
        let g = grp(6, &["(1 2 3)", "(1 2)", "(4 5 6)", "(4 5)"]);
        let f1 = grp(6, &["(1 2 3)", "(1 2)"]);
        let f2 = grp(6, &["(4 5 6)", "(4 5)"]);
        for p in PrimeSet::all_subsets_for(36) {
            let direct = hall_classes(&g, &p).unwrap();
            let assembled = hall_classes_of_product(&g, &[f1.clone(), f2.clone()], &p).unwrap();
            assert_eq!(direct.classes.len(), assembled.classes.len(), "{p}");
            let sizes = |a: &HallAnalysis| {
                let mut v: Vec<u64> = a.classes.iter().map(|c| c.class_size).collect();
                v.sort();
                v
            };
            assert_eq!(sizes(&direct), sizes(&assembled));
        }
    }

    #[test]
    fn separability_examples() {
        let a5 = PermGroup::alternating(5);
        assert!(!is_pi_separable(&a5, &pi("2,3")).unwrap());
        assert!(is_pi_separable(&a5, &pi("2,3,5")).unwrap());
        assert!(is_pi_separable(&a5, &PrimeSet::empty()).unwrap());
        let s4 = PermGroup::symmetric(4);
        for p in PrimeSet::all_subsets_for(24) {
            assert!(is_pi_separable(&s4, &p).unwrap());
            assert!(c_pi_check_separable(&s4, &p).unwrap());
        }
        let s5 = PermGroup::symmetric(5);
        assert!(!is_pi_separable(&s5, &pi("2")).unwrap());
        assert!(c_pi_check_separable(&a5, &pi("2,3")).is_err());
    }

    #[test]
    fn c_pi_examples() {
        let f21 = grp(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]);
        assert!(c_pi_check_separable(&f21, &pi("3")).unwrap());
        let a = hall_classes(&f21, &pi("3")).unwrap();
        assert_eq!(a.classes[0].class_size, 7);
        let d15 = PermGroup::dihedral(15);
        assert!(c_pi_check_separable(&d15, &pi("3,5")).unwrap());
        let a = hall_classes(&d15, &pi("3,5")).unwrap();
        assert_eq!((a.classes[0].order(), a.classes[0].class_size), (15, 1));
    }

    #[test]
    fn intersection_examples() {
        let s5 = PermGroup::symmetric(5);
        let a5 = PermGroup::alternating(5);
        let h = s5.point_stabilizer(4);
        let (meet, image) = hall_intersection_check(&s5, &a5, &h, &pi("2,3")).unwrap();
        assert_eq!((meet.order(), image.order()), (12, 2));
        let (meet, image) = hall_intersection_check(&s5, &s5, &h, &pi("2,3")).unwrap();
        assert_eq!((meet.order(), image.order()), (24, 1));
        let one = PermGroup::trivial(5);
        let (meet, image) = hall_intersection_check(&s5, &one, &h, &pi("2,3")).unwrap();
        assert_eq!((meet.order(), image.order()), (1, 24));
    }

    #[test]
    fn k_pi_examples() {
        let s5 = PermGroup::symmetric(5);
        let a5 = PermGroup::alternating(5);
        assert_eq!(k_pi(&s5, &a5, &pi("2,3")).unwrap().0, 1);
        let g = gl32();
        assert_eq!(k_pi(&g, &g, &pi("2,3")).unwrap().0, 2);
        let s4 = PermGroup::symmetric(4);
        let klein = grp(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert_eq!(k_pi(&s4, &klein, &pi("2")).unwrap().0, 1);
        assert!(k_pi(&PermGroup::alternating(5), &a5, &pi("2,5")).is_err());
    }

    /// Brute-force side of the extension criterion: some Hall subgroup of G
    /// meets A exactly in U.
    fn some_hall_meets_in(g: &PermGroup, a: &PermGroup, u: &PermGroup, p: &PrimeSet) -> bool {
        let (lattice, members) = all_hall_members(g, p).unwrap();
        let t = lattice.table();
        let a_bits = t.bits_of(a).unwrap();
        let u_bits = t.bits_of(u).unwrap();
        members.into_iter().any(|mut h| {
            h.intersect_with(&a_bits);
            h == u_bits
        })
    }

    #[test]
    fn extension_iff_fusion() {
        let cases = [
            (PermGroup::symmetric(4), PermGroup::alternating(4), pi("2,3")),
            (PermGroup::symmetric(4), PermGroup::alternating(4), pi("2")),
            (PermGroup::symmetric(5), PermGroup::alternating(5), pi("2,3")),
            (PermGroup::symmetric(5), PermGroup::alternating(5), pi("2,3,5")),
            (PermGroup::symmetric(5), PermGroup::alternating(5), pi("2,5")),
            (PermGroup::dihedral(6), PermGroup::cyclic(6), pi("2,3")),
        ];
        for (g, a, p) in cases {
            if !crate::perm_core::is_normal(&g, &a) || !g.contains_group(&a) {
                continue;
            }
            let ua = hall_classes(&a, &p).unwrap();
            for u in ua.representatives() {
                let stable = class_is_stable(&g, &a, u).unwrap();
                let ext = extend_hall_over_pi_quotient(&g, &a, u, &p).unwrap();
                assert_eq!(ext.is_some(), stable);
                assert_eq!(some_hall_meets_in(&g, &a, u, &p), stable);
                if let Some(h) = ext {
                    assert!(is_hall(&g, &h, &p));
                    assert!(intersection(&h, &a).unwrap().same_group(u));
                }
            }
        }
    }

    #[test]
    fn lift_examples() {
        let s5 = PermGroup::symmetric(5);
        let a5 = PermGroup::alternating(5);
        let epi = quotient_action(&s5, &a5).unwrap();
        let h = lift_hall_from_quotient(&epi, epi.image(), &pi("2,3")).unwrap();
        assert_eq!(h.order(), 24);

        let s4 = PermGroup::symmetric(4);
        let klein = minimal_normal_subgroups(&s4).unwrap().remove(0);
        let epi = quotient_action(&s4, &klein).unwrap();
        let kbar = hall_classes(epi.image(), &pi("3")).unwrap().classes.remove(0).representative;
        let h = lift_hall_from_quotient(&epi, &kbar, &pi("3")).unwrap();
        assert_eq!(h.order(), 3);

        let one = PermGroup::trivial(4);
        let epi = quotient_action(&s4, &one).unwrap();
        let kbar = hall_classes(epi.image(), &pi("2")).unwrap().classes.remove(0).representative;
        let h = lift_hall_from_quotient(&epi, &kbar, &pi("2")).unwrap();
        assert_eq!(h.order(), 8);
        assert!(are_conjugate(&s4, &h, &crate::subgroup_enum::sylow(&s4, 2).unwrap()).unwrap());
    }
}
