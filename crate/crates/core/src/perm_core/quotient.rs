//! Factor groups as coset actions, and automorphism groups induced by
//! conjugation.

use std::collections::HashMap;

use super::group::PermGroup;
use super::perm::Perm;
use super::subgroups::{ensure_normal, ensure_subgroup, normalizer, RightCosets};
use crate::error::{Error, Result};

/// `G -> G/N` realised as the action of `G` on the right cosets of `N`.
pub struct Epimorphism {
    domain: PermGroup,
    kernel: PermGroup,
    cosets: RightCosets,
    image: PermGroup,
}

impl Epimorphism {
    pub fn domain(&self) -> &PermGroup {
        &self.domain
    }

    pub fn kernel(&self) -> &PermGroup {
        &self.kernel
    }

    pub fn image(&self) -> &PermGroup {
        &self.image
    }

    pub fn apply(&self, x: &Perm) -> Perm {
        self.cosets.action(x)
    }

    pub fn image_of(&self, h: &PermGroup) -> PermGroup {
        let gens = h.generators().iter().map(|x| self.apply(x)).collect();
        PermGroup::new(self.image.degree(), gens).unwrap()
    }

    /// Full preimage of a subgroup of the image.
    pub fn preimage(&self, sub: &PermGroup) -> Result<PermGroup> {
        ensure_subgroup(&self.image, sub)?;
        // coset i is mapped by its representative to the permutation sending 0 to i
        let mut gens: Vec<Perm> = self.kernel.generators().to_vec();
        let mut built = self.kernel.clone();
        for r in self.cosets.reps() {
            if built.order() == self.kernel.order() * sub.order() {
                break;
            }
            if !built.contains(r) && sub.contains(&self.apply(r)) {
                gens.push(r.clone());
                built = PermGroup::new(self.domain.degree(), gens.clone())?;
            }
        }
        Ok(built)
    }
}

pub fn quotient_action(g: &PermGroup, n: &PermGroup) -> Result<Epimorphism> {
    ensure_normal(g, n)?;
    let cosets = RightCosets::new(g, n)?;
    let gens = g.generators().iter().map(|x| cosets.action(x)).collect();
    let image = PermGroup::new(cosets.len().max(1), gens)?;
    if image.order() * n.order() != g.order() {
        return Err(Error::InvariantViolation(format!(
            "coset action image has order {} but |G|/|N| = {}",
            image.order(),
            g.order() / n.order()
        )));
    }
    Ok(Epimorphism {
        domain: g.clone(),
        kernel: n.clone(),
        cosets,
        image,
    })
}

/// `Aut_G(S)`: the action of `N_G(S)` by conjugation on the nonidentity
/// elements of `S`.
pub struct InducedAutGroup {
    normalizer: PermGroup,
    points: Vec<Perm>,
    point_index: HashMap<Perm, usize>,
    image: PermGroup,
}

impl InducedAutGroup {
    pub fn image(&self) -> &PermGroup {
        &self.image
    }

    pub fn normalizer(&self) -> &PermGroup {
        &self.normalizer
    }

    /// Nonidentity elements of `S`, in the order used as points.
    pub fn points(&self) -> &[Perm] {
        &self.points
    }

    /// The automorphism induced by `x` in `N_G(S)`.
    pub fn apply(&self, x: &Perm) -> Result<Perm> {
        if !self.normalizer.contains(x) {
            return Err(Error::NotContained);
        }
        Ok(self.map_unchecked(x))
    }

    fn map_unchecked(&self, x: &Perm) -> Perm {
        if self.points.is_empty() {
            return Perm::identity(1);
        }
        let images = self
            .points
            .iter()
            .map(|s| self.point_index[&s.conjugate_by(x)] as u32)
            .collect();
        Perm::from_images_unchecked(images)
    }
}

pub fn induced_aut_group(g: &PermGroup, s: &PermGroup) -> Result<InducedAutGroup> {
    ensure_subgroup(g, s)?;
    let normalizer = normalizer(g, s)?;
    let points: Vec<Perm> = s.elements().into_iter().skip(1).collect();
    let point_index = points
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let mut aut = InducedAutGroup {
        normalizer,
        points,
        point_index,
        image: PermGroup::trivial(1),
    };
    let degree = aut.points.len().max(1);
    let gens = aut
        .normalizer
        .generators()
        .iter()
        .map(|x| aut.map_unchecked(x))
        .collect();
    aut.image = PermGroup::new(degree, gens)?;
    Ok(aut)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm_core::subgroups::centralizer;

    fn grp(deg: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(deg, gens).unwrap()
    }

    #[test]
    fn quotient_examples() {
        let s4 = PermGroup::symmetric(4);
        let klein = grp(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let q = quotient_action(&s4, &klein).unwrap();
        assert_eq!(q.image().order(), 6);
        assert!(!q.image().is_abelian());
        let q = quotient_action(&s4, &s4).unwrap();
        assert_eq!(q.image().order(), 1);
        let q = quotient_action(&s4, &PermGroup::trivial(4)).unwrap();
        assert_eq!(q.image().order(), 24);
        assert_eq!(q.image().degree(), 24);
    }

    #[test]
    fn quotient_is_homomorphism_and_preimage_works() {
        let s4 = PermGroup::symmetric(4);
        let klein = grp(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let q = quotient_action(&s4, &klein).unwrap();
        let gens = s4.generators();
        for a in gens {
            for b in gens {
                assert_eq!(q.apply(&a.compose(b)), q.apply(a).compose(&q.apply(b)));
            }
        }
        let c3 = grp(4, &["(1 2 3)"]);
        let img = q.image_of(&c3);
        assert_eq!(img.order(), 3);
        assert_eq!(q.preimage(&img).unwrap().order(), 12);
    }

    #[test]
    fn quotient_needs_normal() {
        let s4 = PermGroup::symmetric(4);
        assert_eq!(
            quotient_action(&s4, &grp(4, &["(1 2)"])).err(),
            Some(Error::NotNormal)
        );
    }

    #[test]
    fn induced_aut_examples() {
        let s5 = PermGroup::symmetric(5);
        let a5 = PermGroup::alternating(5);
        let aut = induced_aut_group(&s5, &a5).unwrap();
        assert_eq!(aut.image().order(), 120);
        assert_eq!(aut.image().degree(), 59);

        let a5xa5 = grp(10, &["(1 2 3)", "(1 2 3 4 5)", "(6 7 8)", "(6 7 8 9 10)"]);
        let first = grp(10, &["(1 2 3)", "(1 2 3 4 5)"]);
        let aut = induced_aut_group(&a5xa5, &first).unwrap();
        assert_eq!(aut.image().order(), 60);
        let c = centralizer(&a5xa5, &first).unwrap();
        assert_eq!(aut.image().order() * c.order(), aut.normalizer().order());

        // abelian self-normalizing subgroup: trivial inner image
        let s3 = PermGroup::symmetric(3);
        let t = grp(3, &["(1 2)"]);
        let aut = induced_aut_group(&s3, &t).unwrap();
        assert_eq!(aut.image().order(), 1);
    }
}
