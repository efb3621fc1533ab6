//! Normal structure: closures, minimal normal subgroups, socle components,
//! derived series.

use std::collections::HashSet;

use super::group::PermGroup;
use super::perm::Perm;
use super::subgroups::{ensure_subgroup, is_normal};
use crate::error::{Error, Result};

/// Smallest normal subgroup of `g` containing `s`.
pub fn normal_closure(g: &PermGroup, s: &PermGroup) -> Result<PermGroup> {
    ensure_subgroup(g, s)?;
    normal_closure_of(g, s.generators())
}

pub fn normal_closure_of(g: &PermGroup, elems: &[Perm]) -> Result<PermGroup> {
    let mut n = PermGroup::new(g.degree(), elems.to_vec())?;
    loop {
        let mut missing = Vec::new();
        for y in n.generators() {
            for x in g.generators() {
                let c = y.conjugate_by(x);
                if !n.contains(&c) && !missing.contains(&c) {
                    missing.push(c);
                }
            }
        }
        if missing.is_empty() {
            debug_assert!(is_normal(g, &n));
            return Ok(n);
        }
        n = n.join(&missing)?;
    }
}

/// One representative per conjugacy class of elements, in element order.
pub fn conjugacy_class_reps(g: &PermGroup) -> Vec<Perm> {
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut reps = Vec::new();
    for x in g.elements() {
        if seen.contains(&x) {
            continue;
        }
        let mut class = vec![x.clone()];
        seen.insert(x.clone());
        let mut i = 0;
        while i < class.len() {
            for s in g.generators() {
                let y = class[i].conjugate_by(s);
                if seen.insert(y.clone()) {
                    class.push(y);
                }
            }
            i += 1;
        }
        reps.push(x);
    }
    reps
}

fn push_unique(list: &mut Vec<PermGroup>, n: PermGroup) -> bool {
    if list.iter().any(|m| m.same_group(&n)) {
        false
    } else {
        list.push(n);
        true
    }
}

/// Normal closures of single elements, one per distinct subgroup.
fn element_normal_closures(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let mut out = Vec::new();
    for x in conjugacy_class_reps(g) {
        if x.is_identity() {
            continue;
        }
        push_unique(&mut out, normal_closure_of(g, &[x])?);
    }
    Ok(out)
}

pub fn minimal_normal_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    if g.is_trivial() {
        return Err(Error::TrivialGroup);
    }
    let closures = element_normal_closures(g)?;
    let mut minimal: Vec<PermGroup> = closures
        .iter()
        .filter(|n| {
            !closures
                .iter()
                .any(|m| m.order() < n.order() && n.contains_group(m))
        })
        .cloned()
        .collect();
    minimal.sort_by_key(|n| n.order());
    Ok(minimal)
}

/// Every normal subgroup of `g`, sorted by order. Each normal subgroup is a
/// join of normal closures of elements, so closing that set under joins is
/// exhaustive.
pub fn normal_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let atoms = element_normal_closures(g)?;
    let mut all = vec![PermGroup::trivial(g.degree())];
    for a in &atoms {
        push_unique(&mut all, a.clone());
    }
    let mut i = 0;
    while i < all.len() {
        for a in &atoms {
            if all[i].contains_group(a) {
                continue;
            }
            let j = all[i].join_group(a)?;
            push_unique(&mut all, j);
        }
        i += 1;
    }
    all.sort_by_key(|n| n.order());
    Ok(all)
}

pub fn is_minimal_normal(g: &PermGroup, a: &PermGroup) -> Result<bool> {
    if a.is_trivial() || !is_normal(g, a) {
        return Ok(false);
    }
    Ok(minimal_normal_subgroups(g)?.iter().any(|m| m.same_group(a)))
}

/// Whether `a` is subnormal in `g`: the series of successive normal closures
/// of `a` reaches `a`.
pub fn is_subnormal(g: &PermGroup, a: &PermGroup) -> Result<bool> {
    ensure_subgroup(g, a)?;
    let mut current = g.clone();
    loop {
        if current.order() == a.order() {
            return Ok(true);
        }
        let next = normal_closure(&current, a)?;
        if next.order() == current.order() {
            return Ok(false);
        }
        current = next;
    }
}

#[derive(Debug, Clone)]
pub enum SocleComponents {
    /// Simple factors whose direct product is the minimal normal subgroup.
    NonAbelian(Vec<PermGroup>),
    /// Elementary abelian of order `prime^rank`.
    ElementaryAbelian { prime: u64, rank: u32 },
}

/// Decomposes a minimal normal subgroup `a` of `g` into simple components.
pub fn socle_components(g: &PermGroup, a: &PermGroup) -> Result<SocleComponents> {
    if !is_minimal_normal(g, a)? {
        return Err(Error::NotMinimalNormal);
    }
    if a.is_abelian() {
        let order = a.order();
        let prime = smallest_prime_factor(order);
        let mut rank = 0;
        let mut m = order;
        while m > 1 {
            m /= prime;
            rank += 1;
        }
        return Ok(SocleComponents::ElementaryAbelian { prime, rank });
    }
    // a is a direct power of a nonabelian simple group; its minimal normal
    // subgroups are exactly the factors
    let comps = minimal_normal_subgroups(a)?;
    let total: u64 = comps.iter().map(|c| c.order()).product();
    if total != a.order() {
        return Err(Error::InvariantViolation(format!(
            "components of a minimal normal subgroup of order {} multiply to {}",
            a.order(),
            total
        )));
    }
    Ok(SocleComponents::NonAbelian(comps))
}

pub(crate) fn smallest_prime_factor(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            return p;
        }
        p += 1;
    }
    n
}

pub fn derived_subgroup(g: &PermGroup) -> Result<PermGroup> {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.commutator(b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure_of(g, &comms)
}

pub fn derived_series(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().unwrap();
        let d = derived_subgroup(last)?;
        if d.order() == last.order() {
            return Ok(series);
        }
        series.push(d);
    }
}

pub fn is_solvable(g: &PermGroup) -> Result<bool> {
    Ok(derived_series(g)?.last().unwrap().is_trivial())
}

pub fn is_simple(g: &PermGroup) -> Result<bool> {
    if g.is_trivial() {
        return Ok(false);
    }
    for x in conjugacy_class_reps(g) {
        if x.is_identity() {
            continue;
        }
        if normal_closure_of(g, &[x])?.order() != g.order() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(deg: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(deg, gens).unwrap()
    }

    #[test]
    fn normal_closure_examples() {
        let s4 = PermGroup::symmetric(4);
        let klein = grp(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert!(normal_closure(&s4, &klein).unwrap().same_group(&klein));
        let t = grp(4, &["(1 2)"]);
        assert_eq!(normal_closure(&s4, &t).unwrap().order(), 24);
    }

    #[test]
    fn minimal_normal_examples() {
        let m = minimal_normal_subgroups(&PermGroup::symmetric(4)).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].order(), 4);
        let m = minimal_normal_subgroups(&PermGroup::alternating(5)).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].order(), 60);
        let m = minimal_normal_subgroups(&PermGroup::cyclic(6)).unwrap();
        assert_eq!(m.iter().map(|n| n.order()).collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(
            minimal_normal_subgroups(&PermGroup::trivial(3)).unwrap_err(),
            Error::TrivialGroup
        );
    }

    #[test]
    fn normal_subgroups_of_s4() {
        let ns = normal_subgroups(&PermGroup::symmetric(4)).unwrap();
        assert_eq!(ns.iter().map(|n| n.order()).collect::<Vec<_>>(), vec![1, 4, 12, 24]);
    }

    #[test]
    fn socle_component_examples() {
        let s5 = PermGroup::symmetric(5);
        let a5 = PermGroup::alternating(5);
        match socle_components(&s5, &a5).unwrap() {
            SocleComponents::NonAbelian(c) => {
                assert_eq!(c.len(), 1);
                assert!(c[0].same_group(&a5));
            }
            other => panic!("unexpected {other:?}"),
        }
        let s4 = PermGroup::symmetric(4);
        let klein = grp(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert!(matches!(
            socle_components(&s4, &klein).unwrap(),
            SocleComponents::ElementaryAbelian { prime: 2, rank: 2 }
        ));
        assert_eq!(
            socle_components(&s4, &PermGroup::alternating(4)).unwrap_err(),
            Error::NotMinimalNormal
        );
    }

    #[test]
    fn solvable_and_simple() {
        let s4 = PermGroup::symmetric(4);
        assert!(is_solvable(&s4).unwrap());
        assert!(!is_simple(&s4).unwrap());
        let a5 = PermGroup::alternating(5);
        assert!(!is_solvable(&a5).unwrap());
        assert!(is_simple(&a5).unwrap());
        let c7 = PermGroup::cyclic(7);
        assert!(is_solvable(&c7).unwrap());
        assert!(is_simple(&c7).unwrap());
    }
}
