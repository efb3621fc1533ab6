use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use super::chain::StabChain;
use super::perm::Perm;
use crate::error::{Error, Result};

/// A permutation group given by generators, with a stabilizer chain built
/// at construction. Immutable; clones share the chain.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: Arc<StabChain>,
}

impl PermGroup {
    /// Identity generators are dropped; every other generator must have
    /// degree `degree`.
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Semantic("permutation degree must be positive".into()));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut generators: Vec<Perm> = Vec::with_capacity(gens.len());
        for g in gens {
            if !g.is_identity() && !generators.contains(&g) {
                generators.push(g);
            }
        }
        let chain = Arc::new(StabChain::build(degree, &generators));
        Ok(PermGroup {
            degree,
            generators,
            chain,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree.max(1), Vec::new()).unwrap()
    }

    /// Generators in cycle notation (1-indexed).
    pub fn from_cycle_strings(degree: usize, gens: &[&str]) -> Result<Self> {
        let perms = gens
            .iter()
            .map(|s| Perm::parse_cycles(degree, s))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(degree, perms)
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        if n >= 3 {
            gens.push(Perm::from_cycles(n, &[(0..n).collect()]).unwrap());
        }
        PermGroup::new(n.max(1), gens).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        let gens = (2..n)
            .map(|k| Perm::from_cycles(n, &[vec![0, 1, k]]).unwrap())
            .collect();
        PermGroup::new(n.max(1), gens).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        let gens = if n >= 2 {
            vec![Perm::from_cycles(n, &[(0..n).collect()]).unwrap()]
        } else {
            Vec::new()
        };
        PermGroup::new(n.max(1), gens).unwrap()
    }

    /// Symmetries of the regular `n`-gon, order `2n`. For `n = 2` this is the
    /// Klein four-group on 4 points.
    pub fn dihedral(n: usize) -> Self {
        if n == 2 {
            return PermGroup::from_cycle_strings(4, &["(1 2)(3 4)", "(1 3)(2 4)"]).unwrap();
        }
        let mut gens = Vec::new();
        if n >= 3 {
            gens.push(Perm::from_cycles(n, &[(0..n).collect()]).unwrap());
            let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
            gens.push(Perm::from_images(refl).unwrap());
        }
        PermGroup::new(n.max(1), gens).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        self.chain.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain.contains(g)
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.base()
    }

    /// Basic orbit lengths of the stabilizer chain.
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        let mut out: Vec<Perm> = Vec::new();
        for level in &self.chain.levels {
            for g in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// All elements in a deterministic order, identity first.
    pub fn elements(&self) -> Vec<Perm> {
        self.chain.elements()
    }

    pub(crate) fn chain(&self) -> &StabChain {
        &self.chain
    }

    /// `H <= self`, tested generator-wise.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.degree == self.degree && other.generators.iter().all(|g| self.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.contains_group(other)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point] = true;
        let mut i = 0;
        while i < orbit.len() {
            let p = orbit[i];
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
            i += 1;
        }
        orbit
    }

    /// Orbits on points, each sorted, listed by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            let mut orb = self.orbit(p);
            for &q in &orb {
                seen[q] = true;
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    pub fn orbit_lengths_sorted(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.orbits().iter().map(|o| o.len()).collect();
        v.sort_unstable();
        v
    }

    /// Multiset of element orders as `order -> count`.
    pub fn element_order_counts(&self) -> BTreeMap<u64, u64> {
        let mut counts = BTreeMap::new();
        for g in self.elements() {
            *counts.entry(g.order()).or_insert(0) += 1;
        }
        counts
    }

    /// Subgroup generated by `self` and `extra`.
    pub fn join(&self, extra: &[Perm]) -> Result<PermGroup> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        PermGroup::new(self.degree, gens)
    }

    pub fn join_group(&self, other: &PermGroup) -> Result<PermGroup> {
        self.join(&other.generators)
    }

    /// Image of the group under conjugation by `g`.
    pub fn conjugate(&self, g: &Perm) -> PermGroup {
        let gens = self.generators.iter().map(|x| x.conjugate_by(g)).collect();
        PermGroup::new(self.degree, gens).unwrap()
    }

    /// Stabilizer of a point, by Schreier's lemma.
    pub fn point_stabilizer(&self, point: usize) -> PermGroup {
        let orbit = self.orbit(point);
        let mut reps: Vec<Option<Perm>> = vec![None; self.degree];
        reps[point] = Some(self.identity());
        for &p in &orbit {
            let rep = reps[p].clone().unwrap();
            for g in &self.generators {
                let q = g.apply(p);
                if reps[q].is_none() {
                    reps[q] = Some(rep.compose(g));
                }
            }
        }
        let mut gens: Vec<Perm> = Vec::new();
        let mut current = PermGroup::trivial(self.degree);
        for &p in &orbit {
            let u = reps[p].as_ref().unwrap();
            for g in &self.generators {
                let q = g.apply(p);
                let s = u.compose(g).compose(&reps[q].as_ref().unwrap().inverse());
                if !current.contains(&s) {
                    gens.push(s);
                    current = PermGroup::new(self.degree, gens.clone()).unwrap();
                }
            }
        }
        current
    }

    /// Closure of the generators by breadth-first multiplication. Only for
    /// small groups; used as an oracle against the chain.
    pub fn naive_closure_size(&self, limit: usize) -> Option<usize> {
        let mut seen: HashSet<Perm> = HashSet::new();
        let id = self.identity();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in &self.generators {
                let y = x.compose(g);
                if seen.insert(y.clone()) {
                    if seen.len() > limit {
                        return None;
                    }
                    frontier.push(y);
                }
            }
        }
        Some(seen.len())
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_cycle_string()).collect()
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, order {}, gens [{}])",
            self.degree,
            self.order(),
            self.generator_strings().join(", ")
        )
    }
}
