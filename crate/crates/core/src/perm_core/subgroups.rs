//! Subgroup-relative operations: cosets, normalizers, centralizers,
//! conjugacy and intersections.

use std::collections::HashMap;

use super::group::PermGroup;
use super::perm::Perm;
use crate::error::{Error, Result};

pub fn ensure_subgroup(g: &PermGroup, h: &PermGroup) -> Result<()> {
    if g.contains_group(h) {
        Ok(())
    } else {
        Err(Error::NotContained)
    }
}

pub fn is_normal(g: &PermGroup, n: &PermGroup) -> bool {
    g.contains_group(n)
        && g
            .generators()
            .iter()
            .all(|x| n.generators().iter().all(|y| n.contains(&y.conjugate_by(x))))
}

pub fn ensure_normal(g: &PermGroup, n: &PermGroup) -> Result<()> {
    ensure_subgroup(g, n)?;
    if is_normal(g, n) {
        Ok(())
    } else {
        Err(Error::NotNormal)
    }
}

/// Right cosets `H x` of `h` in `g`, labelled by canonical representatives.
pub struct RightCosets {
    reps: Vec<Perm>,
    index: HashMap<Perm, usize>,
    sub: PermGroup,
}

impl RightCosets {
    pub fn new(g: &PermGroup, h: &PermGroup) -> Result<Self> {
        ensure_subgroup(g, h)?;
        let id = g.identity();
        let mut reps = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(h.chain().canonical_right_coset_rep(&id), 0);
        let mut i = 0;
        while i < reps.len() {
            for s in g.generators() {
                let x = reps[i].compose(s);
                let key = h.chain().canonical_right_coset_rep(&x);
                if !index.contains_key(&key) {
                    index.insert(key, reps.len());
                    reps.push(x);
                }
            }
            i += 1;
        }
        debug_assert_eq!(reps.len() as u64 * h.order(), g.order());
        Ok(RightCosets {
            reps,
            index,
            sub: h.clone(),
        })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[Perm] {
        &self.reps
    }

    pub fn into_reps(self) -> Vec<Perm> {
        self.reps
    }

    /// Index of the coset containing `x`.
    pub fn coset_of(&self, x: &Perm) -> Option<usize> {
        self.index
            .get(&self.sub.chain().canonical_right_coset_rep(x))
            .copied()
    }

    /// The permutation of cosets induced by right multiplication with `x`.
    pub fn action(&self, x: &Perm) -> Perm {
        let images: Vec<u32> = self
            .reps
            .iter()
            .map(|r| self.coset_of(&r.compose(x)).expect("coset action on a non-member") as u32)
            .collect();
        Perm::from_images_unchecked(images)
    }
}

/// One representative per right coset of `h` in `g`, identity first.
pub fn right_transversal(g: &PermGroup, h: &PermGroup) -> Result<Vec<Perm>> {
    Ok(RightCosets::new(g, h)?.into_reps())
}

fn normalizes(x: &Perm, h: &PermGroup) -> bool {
    h.generators().iter().all(|y| h.contains(&y.conjugate_by(x)))
}

/// `N_G(H)`, by testing one element per right coset of `H`.
pub fn normalizer(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    ensure_subgroup(g, h)?;
    let mut n = h.clone();
    for r in right_transversal(g, h)? {
        if !n.contains(&r) && normalizes(&r, h) {
            n = n.join(&[r])?;
        }
    }
    Ok(n)
}

/// Element-wise normalizer scan; the oracle for [`normalizer`].
pub fn normalizer_brute(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    ensure_subgroup(g, h)?;
    let gens: Vec<Perm> = g.elements().into_iter().filter(|x| normalizes(x, h)).collect();
    PermGroup::new(g.degree(), gens)
}

pub fn centralizer(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    ensure_subgroup(g, h)?;
    let mut c = PermGroup::trivial(g.degree());
    for x in g.elements() {
        if !c.contains(&x) && h.generators().iter().all(|y| y.commutes_with(&x)) {
            c = c.join(&[x])?;
        }
    }
    Ok(c)
}

pub fn intersection(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            expected: a.degree(),
            found: b.degree(),
        });
    }
    let (small, large) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    if large.contains_group(small) {
        return Ok(small.clone());
    }
    let mut out = PermGroup::trivial(a.degree());
    for x in small.elements() {
        if large.contains(&x) && !out.contains(&x) {
            out = out.join(&[x])?;
        }
    }
    Ok(out)
}

/// Order of the product set `A B`.
pub fn product_order(a: &PermGroup, b: &PermGroup) -> Result<u64> {
    let meet = intersection(a, b)?;
    Ok(a.order() * b.order() / meet.order())
}

fn same_invariants(h: &PermGroup, k: &PermGroup) -> bool {
    if h.order() != k.order() || h.orbit_lengths_sorted() != k.orbit_lengths_sorted() {
        return false;
    }
    // element orders are only compared while enumeration stays cheap
    if h.order() <= 20_000 {
        return h.element_order_counts() == k.element_order_counts();
    }
    true
}

/// Some `x` in `g` with `H^x = K`, or `None`.
pub fn conjugacy_witness(g: &PermGroup, h: &PermGroup, k: &PermGroup) -> Result<Option<Perm>> {
    ensure_subgroup(g, h)?;
    ensure_subgroup(g, k)?;
    if h.same_group(k) {
        return Ok(Some(g.identity()));
    }
    if !same_invariants(h, k) {
        return Ok(None);
    }
    // H^(yx) = H^x for y in H, so one element per right coset suffices
    for x in right_transversal(g, h)? {
        if h.generators().iter().all(|y| k.contains(&y.conjugate_by(&x))) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

pub fn are_conjugate(g: &PermGroup, h: &PermGroup, k: &PermGroup) -> Result<bool> {
    Ok(conjugacy_witness(g, h, k)?.is_some())
}

/// Whether the `A`-class of `H` is stable under every generator of `G`,
/// i.e. `H^G = H^A`.
pub fn class_is_stable(g: &PermGroup, a: &PermGroup, h: &PermGroup) -> Result<bool> {
    ensure_subgroup(a, h)?;
    for x in g.generators() {
        let hx = h.conjugate(x);
        if !a.contains_group(&hx) || !are_conjugate(a, h, &hx)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> PermGroup {
        PermGroup::symmetric(4)
    }

    fn grp(deg: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(deg, gens).unwrap()
    }

    #[test]
    fn transversal_examples() {
        let g = s4();
        let h = g.point_stabilizer(3);
        let t = right_transversal(&g, &h).unwrap();
        assert_eq!(t.len(), 4);
        assert!(t[0].is_identity());
        assert_eq!(right_transversal(&g, &g).unwrap(), vec![g.identity()]);
        let a5 = PermGroup::alternating(5);
        let a4 = a5.point_stabilizer(4);
        assert_eq!(right_transversal(&a5, &a4).unwrap().len(), 5);
    }

    #[test]
    fn transversal_hits_every_coset_once() {
        let g = PermGroup::symmetric(5);
        let h = grp(5, &["(1 2 3)", "(1 2)"]);
        let t = right_transversal(&g, &h).unwrap();
        assert_eq!(t.len() as u64 * h.order(), g.order());
        for (i, x) in t.iter().enumerate() {
            for y in &t[i + 1..] {
                assert!(!h.contains(&y.compose(&x.inverse())));
            }
        }
    }

    #[test]
    fn transversal_rejects_non_subgroup() {
        let a4 = PermGroup::alternating(4);
        let h = grp(4, &["(1 2)"]);
        assert_eq!(right_transversal(&a4, &h).unwrap_err(), Error::NotContained);
    }

    #[test]
    fn normalizer_examples() {
        let g = s4();
        let p3 = grp(4, &["(1 2 3)"]);
        assert_eq!(normalizer(&g, &p3).unwrap().order(), 6);
        assert!(normalizer(&g, &g).unwrap().same_group(&g));
        for h in [grp(4, &["(1 2)"]), grp(4, &["(1 2)(3 4)"]), grp(4, &["(1 2 3 4)"])] {
            let fast = normalizer(&g, &h).unwrap();
            let slow = normalizer_brute(&g, &h).unwrap();
            assert!(fast.same_group(&slow));
        }
    }

    #[test]
    fn centralizer_examples() {
        let s3 = PermGroup::symmetric(3);
        let c3 = grp(3, &["(1 2 3)"]);
        assert_eq!(centralizer(&s3, &c3).unwrap().order(), 3);
        let c6 = PermGroup::cyclic(6);
        let sub = grp(6, &["(1 3 5)(2 4 6)"]);
        assert!(centralizer(&c6, &sub).unwrap().same_group(&c6));
        let a5 = PermGroup::alternating(5);
        assert_eq!(centralizer(&a5, &a5).unwrap().order(), 1);
    }

    #[test]
    fn conjugacy_examples() {
        let g = s4();
        let p = grp(4, &["(1 2 3)"]);
        let q = grp(4, &["(2 3 4)"]);
        assert!(conjugacy_witness(&g, &p, &p).unwrap().unwrap().is_identity());
        let x = conjugacy_witness(&g, &p, &q).unwrap().unwrap();
        assert!(p.conjugate(&x).same_group(&q));
        let klein_normal = grp(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let klein_other = grp(4, &["(1 2)(3 4)", "(1 2)"]);
        assert_eq!(conjugacy_witness(&g, &klein_normal, &klein_other).unwrap(), None);
    }

    #[test]
    fn intersection_and_product() {
        let g = PermGroup::symmetric(5);
        let a = PermGroup::alternating(5);
        let h = g.point_stabilizer(4);
        let meet = intersection(&a, &h).unwrap();
        assert_eq!(meet.order(), 12);
        assert_eq!(product_order(&a, &h).unwrap(), 120);
    }
}
