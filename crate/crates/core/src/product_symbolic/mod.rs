//! Hall classes of a direct power `S^k` as vectors of factor classes, and
//! their fusion under the cyclic shift of the factors.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::constructions::{build, realize, GroupExpr, Realized};
use crate::error::{Error, Result};
use crate::hall::{hall_classes, PrimeSet};
use crate::perm_core::{are_conjugate, class_is_stable, gcd, intersection, Perm, PermGroup};
use crate::subgroup_enum::SubgroupClass;

/// A Hall class of `S^k`: entry `i` is the class (0-based) of the component
/// in factor `i`. Displayed 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassVector {
    pub entries: Vec<usize>,
}

impl ClassVector {
    pub fn new(entries: Vec<usize>) -> Self {
        ClassVector { entries }
    }

    /// From 1-based entries.
    pub fn from_display(entries: &[usize]) -> Self {
        ClassVector::new(entries.iter().map(|e| e - 1).collect())
    }

    pub fn k(&self) -> usize {
        self.entries.len()
    }

    /// `(x_1, ..., x_k) -> (σ(x_k), σ(x_1), ..., σ(x_{k-1}))` for the class
    /// permutation `twist = σ`.
    pub fn shifted(&self, twist: &[usize]) -> ClassVector {
        let k = self.k();
        let entries = (0..k).map(|i| twist[self.entries[(i + k - 1) % k]]).collect();
        ClassVector { entries }
    }

    pub fn is_constant(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] == w[1])
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| (e + 1).to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for ClassVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The factor data: `S`, `π`, the Hall classes of `S`, and the action of the
/// block shift on class indices (identity unless the extension also twists
/// the factors).
#[derive(Debug, Clone)]
pub struct SymbolicPower {
    pub factor: PermGroup,
    pub pi: PrimeSet,
    pub factor_classes: Vec<SubgroupClass>,
    pub copies: usize,
    pub twist: Vec<usize>,
}

impl SymbolicPower {
    pub fn new(factor: &PermGroup, pi: &PrimeSet, copies: usize) -> Result<Self> {
        if copies == 0 {
            return Err(Error::Precondition("need at least one copy".into()));
        }
        let classes = hall_classes(factor, pi)?.classes;
        if classes.is_empty() {
            return Err(Error::NotEPi { pi: pi.to_string() });
        }
        Ok(SymbolicPower {
            factor: factor.clone(),
            pi: pi.clone(),
            twist: (0..classes.len()).collect(),
            factor_classes: classes,
            copies,
        })
    }

    pub fn with_class_order(mut self, order: &[usize]) -> Result<Self> {
        let mut sorted = order.to_vec();
        sorted.sort();
        if sorted != (0..self.factor_classes.len()).collect::<Vec<_>>() {
            return Err(Error::Precondition("class order is not a permutation".into()));
        }
        self.factor_classes = order.iter().map(|&i| self.factor_classes[i].clone()).collect();
        Ok(self)
    }

    pub fn with_twist(mut self, twist: Vec<usize>) -> Result<Self> {
        let mut sorted = twist.clone();
        sorted.sort();
        if sorted != (0..self.factor_classes.len()).collect::<Vec<_>>() {
            return Err(Error::Precondition("twist is not a permutation of the classes".into()));
        }
        self.twist = twist;
        Ok(self)
    }

    pub fn class_count(&self) -> usize {
        self.factor_classes.len()
    }

    /// All `c^k` vectors in lexicographic order.
    pub fn class_vectors(&self) -> Vec<ClassVector> {
        all_vectors(self.class_count(), self.copies)
    }
}

fn all_vectors(c: usize, k: usize) -> Vec<ClassVector> {
    let mut out = vec![ClassVector::new(Vec::new())];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..c).map(move |x| {
                    let mut e = v.entries.clone();
                    e.push(x);
                    ClassVector::new(e)
                })
            })
            .collect();
    }
    out
}

/// The A-classes of π-Hall subgroups of `S^k`.
pub fn enumerate_class_vectors(s: &PermGroup, pi: &PrimeSet, k: usize) -> Result<Vec<ClassVector>> {
    Ok(SymbolicPower::new(s, pi, k)?.class_vectors())
}

#[derive(Debug, Clone, Serialize)]
pub struct ShiftOrbits {
    pub orbits: Vec<Vec<ClassVector>>,
    pub fixed: Vec<ClassVector>,
    /// Orbit count from Burnside's lemma over the cyclic group of the shift.
    pub burnside_count: usize,
}

pub fn shift_orbits(vectors: &[ClassVector], k: usize) -> Result<ShiftOrbits> {
    let c = vectors.iter().flat_map(|v| v.entries.iter()).max().map_or(1, |m| m + 1);
    shift_orbits_twisted(vectors, k, &(0..c).collect::<Vec<_>>())
}

/// Orbits of the (twisted) shift on a shift-closed set of vectors.
pub fn shift_orbits_twisted(vectors: &[ClassVector], k: usize, twist: &[usize]) -> Result<ShiftOrbits> {
    if vectors.iter().any(|v| v.k() != k) {
        return Err(Error::Precondition(format!("vectors must have length {k}")));
    }
    let set: BTreeSet<ClassVector> = vectors.iter().cloned().collect();
    let mut seen: BTreeSet<ClassVector> = BTreeSet::new();
    let mut orbits = Vec::new();
    for v in &set {
        if seen.contains(v) {
            continue;
        }
        let mut orbit = vec![v.clone()];
        let mut w = v.shifted(twist);
        while &w != v {
            if !set.contains(&w) {
                return Err(Error::Precondition("vector set is not closed under the shift".into()));
            }
            orbit.push(w.clone());
            w = w.shifted(twist);
        }
        orbit.sort();
        orbit.dedup();
        seen.extend(orbit.iter().cloned());
        orbits.push(orbit);
    }
    let fixed: Vec<ClassVector> = set.iter().filter(|v| v.shifted(twist) == **v).cloned().collect();
    // the twisted shift has order k * ord(twist)
    let mut twist_order = 1;
    let mut t: Vec<usize> = twist.to_vec();
    while t.iter().enumerate().any(|(i, &x)| i != x) {
        t = t.iter().map(|&x| twist[x]).collect();
        twist_order += 1;
    }
    let m = k.max(1) * twist_order;
    let mut total_fixed = 0;
    for j in 0..m {
        total_fixed += set
            .iter()
            .filter(|v| {
                let mut w = (*v).clone();
                for _ in 0..j {
                    w = w.shifted(twist);
                }
                w == **v
            })
            .count();
    }
    let burnside_count = total_fixed / m;
    if burnside_count * m != total_fixed || burnside_count != orbits.len() {
        return Err(Error::InvariantViolation(format!(
            "{} orbits found but Burnside gives {total_fixed}/{m}",
            orbits.len()
        )));
    }
    Ok(ShiftOrbits {
        orbits,
        fixed,
        burnside_count,
    })
}

/// `(1/k) Σ_{j=0}^{k-1} c^gcd(j,k)`: shift orbits on all `c^k` vectors.
pub fn necklace_count(c: u64, k: u64) -> u64 {
    let total: u64 = (0..k).map(|j| c.pow(gcd(j, k) as u32)).sum();
    total / k
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitVerdict {
    pub representative: ClassVector,
    pub size: usize,
    pub stable: bool,
    pub verdict: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossCheck {
    pub factor: String,
    pub copies: usize,
    pub pi: PrimeSet,
    pub symbolic_classes: usize,
    pub explicit_classes: usize,
    pub symbolic_orbits: usize,
    pub explicit_orbits: usize,
    pub symbolic_fixed: usize,
    pub explicit_stable: usize,
    pub agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Remark2Report {
    pub pi: PrimeSet,
    pub factor_order: u64,
    pub copies: usize,
    pub group_order: String,
    pub factor_classes: Vec<String>,
    pub a_classes: usize,
    pub orbit_count: usize,
    pub burnside_count: u64,
    pub stable_classes: Vec<ClassVector>,
    pub k1: ClassVector,
    pub k2: ClassVector,
    pub k1_k2_fused: bool,
    pub k1_k2_a_conjugate: bool,
    pub k1_stable: bool,
    pub k2_stable: bool,
    pub theorem_witnessed: bool,
    pub orbits: Vec<OrbitVerdict>,
    pub cross_checks: Vec<CrossCheck>,
    pub power_checks: Vec<PowerCheck>,
}

impl Remark2Report {
    pub fn reproduces(&self) -> bool {
        self.a_classes == 32
            && self.orbit_count == 8
            && self.burnside_count == 8
            && self.stable_classes
                == vec![
                    ClassVector::from_display(&[1, 1, 1, 1, 1]),
                    ClassVector::from_display(&[2, 2, 2, 2, 2]),
                ]
            && self.k1_k2_fused
            && !self.k1_k2_a_conjugate
            && !self.k1_stable
            && !self.k2_stable
            && self.theorem_witnessed
            && self.cross_checks.iter().all(|c| c.agree)
            && self.power_checks.iter().all(|c| c.agree)
    }
}

const COVERS: &str = "G = A N_G(H)";
const FAILS: &str = "G != A N_G(K)";

/// Restricts a subgroup of `S^k` to block `i` as a subgroup of `S`.
fn block_component(h: &PermGroup, factor_i: &PermGroup, i: usize, d: usize) -> Result<PermGroup> {
    let part = intersection(h, factor_i)?;
    let gens = part
        .generators()
        .iter()
        .map(|x| Perm::from_images((0..d).map(|p| x.apply(i * d + p) - i * d).collect()))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(d, gens)
}

fn vector_of(
    h: &PermGroup,
    power: &SymbolicPower,
    named: &std::collections::BTreeMap<String, PermGroup>,
) -> Result<ClassVector> {
    let d = power.factor.degree();
    let mut entries = Vec::new();
    for i in 0..power.copies {
        let comp = block_component(h, &named[&format!("factor_{}", i + 1)], i, d)?;
        let mut idx = None;
        for (j, c) in power.factor_classes.iter().enumerate() {
            if are_conjugate(&power.factor, &comp, &c.representative)? {
                idx = Some(j);
                break;
            }
        }
        entries.push(idx.ok_or_else(|| {
            Error::InvariantViolation("component is not a Hall subgroup of the factor".into())
        })?);
    }
    Ok(ClassVector::new(entries))
}

/// Builds `S ≀ C_k` explicitly, enumerates the Hall classes of the base, and
/// compares counts, shift orbits and stability with the symbolic calculus.
pub fn cross_check(factor: &GroupExpr, k: usize, pi: &PrimeSet) -> Result<CrossCheck> {
    let s = build(factor)?;
    let power = SymbolicPower::new(&s.group, pi, k)?;
    let g = build(&GroupExpr::ShiftProduct {
        factor: Box::new(factor.clone()),
        copies: k,
    })?;
    let base = &g.named["base"];
    let tau = g.named["shift"].generators().first().cloned();
    let explicit = hall_classes(base, pi)?;
    let vectors = power.class_vectors();
    let symbolic = shift_orbits_twisted(&vectors, k, &power.twist)?;

    // every explicit class maps to a distinct vector
    let mut seen = BTreeSet::new();
    let mut consistent = true;
    let mut explicit_stable = 0;
    for c in &explicit.classes {
        let h = &c.representative;
        let v = vector_of(h, &power, &g.named)?;
        consistent &= seen.insert(v.clone());
        let stable = class_is_stable(&g.group, base, h)?;
        explicit_stable += stable as usize;
        consistent &= stable == (v.shifted(&power.twist) == v);
        if let Some(t) = &tau {
            consistent &= vector_of(&h.conjugate(t), &power, &g.named)? == v.shifted(&power.twist);
        }
    }
    // explicit fusion: classes of the base merged by conjugation in G
    let mut explicit_orbits = 0;
    let mut merged = vec![false; explicit.classes.len()];
    for i in 0..explicit.classes.len() {
        if merged[i] {
            continue;
        }
        explicit_orbits += 1;
        for j in i..explicit.classes.len() {
            if !merged[j]
                && are_conjugate(
                    &g.group,
                    &explicit.classes[i].representative,
                    &explicit.classes[j].representative,
                )?
            {
                merged[j] = true;
            }
        }
    }
    let agree = consistent
        && explicit.classes.len() == vectors.len()
        && explicit_orbits == symbolic.orbits.len()
        && explicit_stable == symbolic.fixed.len();
    Ok(CrossCheck {
        factor: factor.to_string(),
        copies: k,
        pi: pi.clone(),
        symbolic_classes: vectors.len(),
        explicit_classes: explicit.classes.len(),
        symbolic_orbits: symbolic.orbits.len(),
        explicit_orbits,
        symbolic_fixed: symbolic.fixed.len(),
        explicit_stable,
        agree,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerCheck {
    pub factor: String,
    pub copies: usize,
    pub pi: PrimeSet,
    pub vectors: usize,
    pub products_are_hall: bool,
    pub pairwise_non_conjugate: bool,
    pub shift_matches: bool,
    pub stable_iff_fixed: bool,
    pub agree: bool,
}

fn embed(x: &Perm, block: usize, d: usize, degree: usize) -> Result<Perm> {
    Perm::from_images(
        (0..degree)
            .map(|p| if p / d == block { block * d + x.apply(p - block * d) } else { p })
            .collect(),
    )
}

/// Without enumerating the subgroups of the base: forms the product Hall
/// subgroup for every class vector in the explicit `S ≀ C_k` and checks that
/// distinct vectors give non-conjugate subgroups of the base, that the shift
/// acts on them as on vectors, and that stability matches fixed vectors.
pub fn explicit_power_check(factor: &GroupExpr, k: usize, pi: &PrimeSet) -> Result<PowerCheck> {
    let s = build(factor)?;
    let power = SymbolicPower::new(&s.group, pi, k)?;
    let g = build(&GroupExpr::ShiftProduct {
        factor: Box::new(factor.clone()),
        copies: k,
    })?;
    let base = &g.named["base"];
    let d = s.group.degree();
    let degree = g.group.degree();
    let vectors = power.class_vectors();
    let mut subgroups = Vec::new();
    for v in &vectors {
        let mut gens = Vec::new();
        for (i, &c) in v.entries.iter().enumerate() {
            for x in power.factor_classes[c].representative.generators() {
                gens.push(embed(x, i, d, degree)?);
            }
        }
        subgroups.push(PermGroup::new(degree, gens)?);
    }
    let products_are_hall = subgroups
        .iter()
        .all(|h| base.contains_group(h) && crate::hall::is_hall(base, h, pi));
    let mut pairwise_non_conjugate = true;
    for i in 0..subgroups.len() {
        for j in i + 1..subgroups.len() {
            pairwise_non_conjugate &= !are_conjugate(base, &subgroups[i], &subgroups[j])?;
        }
    }
    let tau = g.named["shift"].generators().first().cloned();
    let mut shift_matches = true;
    let mut stable_iff_fixed = true;
    for (v, h) in vectors.iter().zip(&subgroups) {
        let w = v.shifted(&power.twist);
        if let Some(t) = &tau {
            let target = &subgroups[vectors.binary_search(&w).expect("vectors are sorted")];
            shift_matches &= are_conjugate(base, &h.conjugate(t), target)?;
        }
        stable_iff_fixed &= class_is_stable(&g.group, base, h)? == (&w == v);
    }
    Ok(PowerCheck {
        factor: factor.to_string(),
        copies: k,
        pi: pi.clone(),
        vectors: vectors.len(),
        agree: products_are_hall && pairwise_non_conjugate && shift_matches && stable_iff_fixed,
        products_are_hall,
        pairwise_non_conjugate,
        shift_matches,
        stable_iff_fixed,
    })
}

/// The fivefold power of GL(3,2) extended by the 5-cycle of factors, for
/// π = {2,3}, computed symbolically.
pub fn remark2_report() -> Result<Remark2Report> {
    let pi = PrimeSet::new([2, 3])?;
    let k = 5;
    let expr = GroupExpr::ShiftProduct {
        factor: Box::new(GroupExpr::atom("GL", &[3, 2])),
        copies: k,
    };
    let (factor, order) = match realize(&expr)? {
        Realized::Symbolic(s) => (s.factor, s.order),
        Realized::Explicit(b) => return Err(Error::Precondition(format!(
            "expected a symbolic product, got an explicit group of order {}",
            b.group.order()
        ))),
    };
    let mut power = SymbolicPower::new(&factor.group, &pi, k)?;
    // the class of point stabilizers first
    let mut order_idx: Vec<usize> = (0..power.class_count()).collect();
    order_idx.sort_by_key(|&i| {
        let fixes_point = power.factor_classes[i]
            .representative
            .orbit_lengths_sorted()
            .first()
            .is_some_and(|&l| l == 1);
        (!fixes_point, i)
    });
    power = power.with_class_order(&order_idx)?;

    let vectors = power.class_vectors();
    let orbits = shift_orbits_twisted(&vectors, k, &power.twist)?;
    let k1 = ClassVector::from_display(&[1, 1, 1, 1, 2]);
    let k2 = ClassVector::from_display(&[2, 1, 1, 1, 1]);
    let orbit_of = |v: &ClassVector| orbits.orbits.iter().position(|o| o.contains(v));
    let is_stable = |v: &ClassVector| orbits.fixed.contains(v);

    let verdicts = orbits
        .orbits
        .iter()
        .map(|o| {
            let stable = o.len() == 1;
            OrbitVerdict {
                representative: o[0].clone(),
                size: o.len(),
                stable,
                verdict: if stable { COVERS } else { FAILS }.to_string(),
            }
        })
        .collect();

    let mut cross_checks = Vec::new();
    let sym3 = GroupExpr::atom("Sym", &[3]);
    for copies in [2, 3] {
        for p in PrimeSet::all_subsets_for(6) {
            cross_checks.push(cross_check(&sym3, copies, &p)?);
        }
    }

    let power_checks = vec![explicit_power_check(&GroupExpr::atom("GL", &[3, 2]), 2, &pi)?];

    Ok(Remark2Report {
        factor_order: factor.group.order(),
        copies: k,
        group_order: order.to_string(),
        factor_classes: power
            .factor_classes
            .iter()
            .enumerate()
            .map(|(i, c)| {
                format!(
                    "{}: order {}, {} conjugates, generators {}",
                    i + 1,
                    c.order(),
                    c.class_size,
                    c.representative.generator_strings().join(" ")
                )
            })
            .collect(),
        a_classes: vectors.len(),
        orbit_count: orbits.orbits.len(),
        burnside_count: necklace_count(power.class_count() as u64, k as u64),
        stable_classes: orbits.fixed.clone(),
        k1_k2_fused: orbit_of(&k1).is_some() && orbit_of(&k1) == orbit_of(&k2),
        k1_k2_a_conjugate: k1 == k2,
        k1_stable: is_stable(&k1),
        k2_stable: is_stable(&k2),
        theorem_witnessed: !orbits.fixed.is_empty(),
        k1,
        k2,
        orbits: verdicts,
        cross_checks,
        power_checks,
        pi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi(s: &str) -> PrimeSet {
        s.parse().unwrap()
    }

    #[test]
    fn vector_counts() {
        let gl = build(&GroupExpr::atom("GL", &[3, 2])).unwrap().group;
        assert_eq!(enumerate_class_vectors(&gl, &pi("2,3"), 5).unwrap().len(), 32);
        assert_eq!(enumerate_class_vectors(&gl, &pi("2,3"), 1).unwrap().len(), 2);
        let a5 = PermGroup::alternating(5);
        assert_eq!(enumerate_class_vectors(&a5, &pi("2,3"), 2).unwrap().len(), 1);
        assert!(enumerate_class_vectors(&a5, &pi("2,5"), 2).is_err());
    }

    #[test]
    fn orbit_examples() {
        let v = all_vectors(2, 5);
        let o = shift_orbits(&v, 5).unwrap();
        assert_eq!((o.orbits.len(), o.fixed.len(), o.burnside_count), (8, 2, 8));
        let o = shift_orbits(&all_vectors(3, 1), 1).unwrap();
        assert_eq!(o.fixed.len(), 3);
        let k1 = ClassVector::from_display(&[1, 1, 1, 1, 2]);
        let k2 = ClassVector::from_display(&[2, 1, 1, 1, 1]);
        assert_eq!(k1.shifted(&[0, 1]), k2);
        assert_eq!(k1.to_string(), "(1,1,1,1,2)");
    }

    #[test]
    fn necklaces_match_orbits() {
        for c in 1..4usize {
            for k in 1..7usize {
                let o = shift_orbits_twisted(&all_vectors(c, k), k, &(0..c).collect::<Vec<_>>()).unwrap();
                assert_eq!(o.orbits.len() as u64, necklace_count(c as u64, k as u64), "c={c} k={k}");
            }
        }
    }

    #[test]
    fn twisted_shift() {
        // swapping the two classes on every step fixes no vector for odd k
        let o = shift_orbits_twisted(&all_vectors(2, 3), 3, &[1, 0]).unwrap();
        assert!(o.fixed.is_empty());
        assert_eq!(o.orbits.iter().map(|x| x.len()).sum::<usize>(), 8);
    }

    #[test]
    fn cross_check_sym3() {
        for k in [2, 3] {
            for p in PrimeSet::all_subsets_for(6) {
                let c = cross_check(&GroupExpr::atom("Sym", &[3]), k, &p).unwrap();
                assert!(c.agree, "{c:?}");
            }
        }
    }

    #[test]
    fn explicit_gl32_square() {
        let c = explicit_power_check(&GroupExpr::atom("GL", &[3, 2]), 2, &pi("2,3")).unwrap();
        assert_eq!(c.vectors, 4);
        assert!(c.agree, "{c:?}");
    }

    #[test]
    fn report() {
        let r = remark2_report().unwrap();
        assert!(r.reproduces(), "{r:#?}");
        assert_eq!(r.group_order, (168u128.pow(5) * 5).to_string());
    }
}
