//! Exhaustive enumeration of subgroup classes for small groups, and Sylow
//! subgroups.

mod lattice;
mod table;

pub use lattice::{ClassRecord, SubgroupLattice};
pub use table::{Bits, ElementTable};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm_core::{normalizer, Perm, PermGroup};

/// A conjugacy class of subgroups of some parent group.
#[derive(Debug, Clone)]
pub struct SubgroupClass {
    pub representative: PermGroup,
    /// Number of conjugates, `|parent : N_parent(rep)|`.
    pub class_size: u64,
}

impl SubgroupClass {
    pub fn order(&self) -> u64 {
        self.representative.order()
    }

    pub fn summary(&self) -> ClassSummary {
        ClassSummary {
            order: self.order(),
            class_size: self.class_size,
            generators: self.representative.generator_strings(),
        }
    }
}

/// Serializable description of a class.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ClassSummary {
    pub order: u64,
    pub class_size: u64,
    pub generators: Vec<String>,
}

fn classes_from(lattice: &SubgroupLattice, keep: impl Fn(u64) -> bool) -> Vec<SubgroupClass> {
    lattice
        .classes()
        .iter()
        .enumerate()
        .filter(|(_, c)| keep(c.order))
        .map(|(i, c)| SubgroupClass {
            representative: lattice.rep_group(i),
            class_size: c.class_size,
        })
        .collect()
}

/// Every conjugacy class of subgroups, sorted by `(order, class_size)`.
pub fn subgroup_classes(g: &PermGroup) -> Result<Vec<SubgroupClass>> {
    let lattice = SubgroupLattice::enumerate(g)?;
    Ok(classes_from(&lattice, |_| true))
}

/// Classes of subgroups of order exactly `m`.
pub fn subgroups_of_order(g: &PermGroup, m: u64) -> Result<Vec<SubgroupClass>> {
    if m == 0 || g.order() % m != 0 {
        return Err(Error::Precondition(format!(
            "{m} does not divide the group order {}",
            g.order()
        )));
    }
    let lattice = SubgroupLattice::enumerate_dividing(g, m)?;
    Ok(classes_from(&lattice, |o| o == m))
}

/// The `p`-part of an element: `x^m` where `|x| = p^s m` with `p ∤ m`.
fn p_part(x: &Perm, p: u64) -> Perm {
    let mut m = x.order();
    while m % p == 0 {
        m /= p;
    }
    x.pow(m as i64)
}

/// A Sylow `p`-subgroup, grown one `p`-element of the normalizer at a time.
pub fn sylow(g: &PermGroup, p: u64) -> Result<PermGroup> {
    let mut target = 1u64;
    let mut n = g.order();
    while p > 1 && n % p == 0 {
        n /= p;
        target *= p;
    }
    let mut s = PermGroup::trivial(g.degree());
    while s.order() < target {
        let norm = normalizer(g, &s)?;
        let found = norm
            .elements()
            .into_iter()
            .map(|x| p_part(&x, p))
            .find(|y| !s.contains(y))
            .ok_or_else(|| {
                Error::InvariantViolation(format!(
                    "no p-element extends a p-subgroup of order {} below {target}",
                    s.order()
                ))
            })?;
        s = s.join(&[found])?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, HashSet};

    /// Every subgroup as a sorted element set, by growing subgroups one
    /// element at a time with naive closure.
    fn naive_subgroups(g: &PermGroup) -> HashSet<BTreeSet<Perm>> {
        fn close(elems: &BTreeSet<Perm>, extra: &Perm) -> BTreeSet<Perm> {
            let mut set = elems.clone();
            set.insert(extra.clone());
            loop {
                let snapshot: Vec<Perm> = set.iter().cloned().collect();
                let mut grew = false;
                for a in &snapshot {
                    for b in &snapshot {
                        if set.insert(a.compose(b)) {
                            grew = true;
                        }
                    }
                }
                if !grew {
                    return set;
                }
            }
        }
        let elems = g.elements();
        let trivial: BTreeSet<Perm> = [g.identity()].into_iter().collect();
        let mut all: HashSet<BTreeSet<Perm>> = HashSet::new();
        all.insert(trivial.clone());
        let mut frontier = vec![trivial];
        while let Some(h) = frontier.pop() {
            for x in &elems {
                if h.contains(x) {
                    continue;
                }
                let k = close(&h, x);
                if all.insert(k.clone()) {
                    frontier.push(k);
                }
            }
        }
        all
    }

    fn naive_class_count(g: &PermGroup, subs: &HashSet<BTreeSet<Perm>>) -> usize {
        let elems = g.elements();
        let mut seen: HashSet<BTreeSet<Perm>> = HashSet::new();
        let mut classes = 0;
        for h in subs {
            if seen.contains(h) {
                continue;
            }
            classes += 1;
            for x in &elems {
                seen.insert(h.iter().map(|y| y.conjugate_by(x)).collect());
            }
        }
        classes
    }

    #[test]
    fn s4_classes_against_naive() {
        let g = PermGroup::symmetric(4);
        let lattice = SubgroupLattice::enumerate(&g).unwrap();
        let naive = naive_subgroups(&g);
        assert_eq!(naive.len(), 30);
        assert_eq!(naive_class_count(&g, &naive), 11);
        assert_eq!(lattice.classes().len(), 11);
        assert_eq!(lattice.total_subgroups(), 30);
    }

    #[test]
    fn small_groups_against_naive() {
        let groups = [
            PermGroup::dihedral(6),
            PermGroup::from_cycle_strings(6, &["(1 2 3)", "(1 2)", "(4 5 6)", "(4 5)"]).unwrap(),
            PermGroup::from_cycle_strings(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]).unwrap(),
            PermGroup::from_cycle_strings(8, &["(1 2 3 4)(5 6 7 8)", "(1 5)(2 8)(3 7)(4 6)"]).unwrap(),
        ];
        for g in groups {
            let lattice = SubgroupLattice::enumerate(&g).unwrap();
            let naive = naive_subgroups(&g);
            assert_eq!(lattice.total_subgroups() as usize, naive.len(), "{g:?}");
            assert_eq!(lattice.classes().len(), naive_class_count(&g, &naive), "{g:?}");
        }
    }

    #[test]
    fn a5_has_nine_classes() {
        let g = PermGroup::alternating(5);
        let classes = subgroup_classes(&g).unwrap();
        assert_eq!(classes.len(), 9);
        // independent recount: closures of all 2-generated subgroups
        let elems = g.elements();
        let t = ElementTable::new(&g).unwrap();
        let mut subs: HashSet<Bits> = HashSet::new();
        for a in 0..elems.len() as u32 {
            for b in a..elems.len() as u32 {
                subs.insert(t.closure(&[a, b]));
            }
        }
        let total: u64 = classes.iter().map(|c| c.class_size).sum();
        assert_eq!(subs.len() as u64, total);
    }

    #[test]
    fn cyclic_prime_has_two_classes() {
        assert_eq!(subgroup_classes(&PermGroup::cyclic(7)).unwrap().len(), 2);
    }

    #[test]
    fn classes_sorted_and_consistent() {
        let g = PermGroup::symmetric(4);
        let classes = subgroup_classes(&g).unwrap();
        for w in classes.windows(2) {
            assert!((w[0].order(), w[0].class_size) <= (w[1].order(), w[1].class_size));
        }
        for c in &classes {
            assert_eq!(g.order() % c.order(), 0);
            let n = normalizer(&g, &c.representative).unwrap();
            assert_eq!(c.class_size * n.order(), g.order());
        }
    }

    #[test]
    fn order_filter_matches_full_enumeration() {
        let g = PermGroup::symmetric(5);
        let full = subgroup_classes(&g).unwrap();
        for m in [1, 2, 4, 6, 8, 12, 20, 24, 60, 120] {
            let filtered = subgroups_of_order(&g, m).unwrap();
            let expected = full.iter().filter(|c| c.order() == m).count();
            assert_eq!(filtered.len(), expected, "m = {m}");
        }
        assert!(subgroups_of_order(&g, 7).is_err());
    }

    #[test]
    fn sylow_examples() {
        let s4 = PermGroup::symmetric(4);
        assert_eq!(sylow(&s4, 2).unwrap().order(), 8);
        let p3 = sylow(&s4, 3).unwrap();
        assert_eq!(p3.order(), 3);
        assert_eq!(s4.order() / normalizer(&s4, &p3).unwrap().order(), 4);
        let a5 = PermGroup::alternating(5);
        let p5 = sylow(&a5, 5).unwrap();
        assert_eq!(p5.order(), 5);
        assert_eq!(a5.order() / normalizer(&a5, &p5).unwrap().order(), 6);
        assert_eq!(sylow(&a5, 7).unwrap().order(), 1);
    }

    #[test]
    fn sylow_counts_are_one_mod_p() {
        for g in [PermGroup::symmetric(5), PermGroup::alternating(6), PermGroup::dihedral(12)] {
            for p in [2u64, 3, 5] {
                if g.order() % p != 0 {
                    continue;
                }
                let s = sylow(&g, p).unwrap();
                let count = g.order() / normalizer(&g, &s).unwrap().order();
                assert_eq!(count % p, 1);
                assert_eq!(g.order() % count, 0);
                let by_enum = subgroups_of_order(&g, s.order()).unwrap();
                assert_eq!(by_enum.len(), 1);
                assert_eq!(by_enum[0].class_size, count);
            }
        }
    }
}
