use std::collections::{BTreeMap, HashMap, VecDeque};

use super::atoms::{atom, gl32_duality};
use super::expr::{AutSpec, GroupExpr, Word};
use super::parse::read_group_file;
use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::perm_core::{Perm, PermGroup};

/// An explicitly realized group together with labelled subgroups.
#[derive(Debug, Clone)]
pub struct BuiltGroup {
    pub group: PermGroup,
    /// Generators in construction order; automorphism words refer to these.
    pub generators: Vec<Perm>,
    pub named: BTreeMap<String, PermGroup>,
    pub expr: GroupExpr,
}

impl BuiltGroup {
    pub fn named(&self, label: &str) -> Option<&PermGroup> {
        self.named.get(label)
    }

    fn checked(self) -> Result<Self> {
        for (label, h) in &self.named {
            if !self.group.contains_group(h) {
                return Err(Error::InvariantViolation(format!(
                    "named subgroup {label} is not contained in the group"
                )));
            }
        }
        Ok(self)
    }
}

/// `S^k`, optionally extended by the cyclic shift of the factors, too large
/// to realize explicitly.
#[derive(Debug, Clone)]
pub struct SymbolicProduct {
    pub factor: BuiltGroup,
    pub copies: usize,
    pub shifted: bool,
    pub order: u128,
    pub degree: u128,
}

#[derive(Debug, Clone)]
pub enum Realized {
    Explicit(BuiltGroup),
    Symbolic(SymbolicProduct),
}

fn fits(order: Option<u128>, degree: Option<u128>) -> bool {
    let b = Bounds::global();
    matches!(order, Some(o) if o <= b.max_order as u128)
        && matches!(degree, Some(d) if d <= b.max_degree as u128)
}

fn order_exceeded(order: Option<u128>) -> Error {
    let limit = Bounds::global().max_order;
    Error::BoundExceeded {
        what: "explicit group order",
        value: order.map_or(u64::MAX, |o| o.min(u64::MAX as u128) as u64),
        limit,
    }
}

/// Builds an expression explicitly, or returns a symbolic handle for direct
/// powers that exceed the explicit limits.
pub fn realize(expr: &GroupExpr) -> Result<Realized> {
    match expr {
        GroupExpr::Atom { name, params } => {
            let a = atom(name, params)?;
            Ok(Realized::Explicit(BuiltGroup {
                group: a.group,
                generators: a.generators,
                named: a.named,
                expr: expr.clone(),
            }))
        }
        GroupExpr::FromFile(path) => {
            let file = read_group_file(path)?;
            if file.degree > Bounds::global().max_degree {
                return Err(Error::BoundExceeded {
                    what: "permutation degree",
                    value: file.degree as u64,
                    limit: Bounds::global().max_degree as u64,
                });
            }
            let group = file.to_group()?;
            if group.order() > Bounds::global().max_order {
                return Err(order_exceeded(Some(group.order() as u128)));
            }
            Ok(Realized::Explicit(BuiltGroup {
                group,
                generators: file.generators,
                named: BTreeMap::new(),
                expr: expr.clone(),
            }))
        }
        GroupExpr::DirectProduct(factors) => {
            let built: Vec<BuiltGroup> = factors.iter().map(build).collect::<Result<_>>()?;
            let order = built
                .iter()
                .try_fold(1u128, |acc, b| acc.checked_mul(b.group.order() as u128));
            let degree = Some(built.iter().map(|b| b.group.degree() as u128).sum());
            if fits(order, degree) {
                return Ok(Realized::Explicit(direct_product(&built, expr.clone())?));
            }
            if factors.iter().all(|f| f == &factors[0]) {
                return Ok(Realized::Symbolic(SymbolicProduct {
                    factor: built[0].clone(),
                    copies: built.len(),
                    shifted: false,
                    order: order.unwrap_or(u128::MAX),
                    degree: degree.unwrap(),
                }));
            }
            Err(order_exceeded(order))
        }
        GroupExpr::ShiftProduct { factor, copies } => {
            if *copies == 0 {
                return Err(Error::Semantic("ShiftProduct needs at least one copy".into()));
            }
            let s = build(factor)?;
            let order = (s.group.order() as u128)
                .checked_pow(*copies as u32)
                .and_then(|o| o.checked_mul(*copies as u128));
            let degree = Some(s.group.degree() as u128 * *copies as u128);
            if fits(order, degree) {
                return Ok(Realized::Explicit(shift_product(&s, *copies, expr.clone())?));
            }
            Ok(Realized::Symbolic(SymbolicProduct {
                factor: s,
                copies: *copies,
                shifted: true,
                order: order.unwrap_or(u128::MAX),
                degree: degree.unwrap(),
            }))
        }
        GroupExpr::SemidirectByAut { base, auts } => {
            let n = build(base)?;
            let sd = semidirect_by_specs(&n, auts)?;
            let mut built = sd.built;
            built.expr = expr.clone();
            Ok(Realized::Explicit(built))
        }
    }
}

/// Explicit build; symbolic-only expressions are refused.
pub fn build(expr: &GroupExpr) -> Result<BuiltGroup> {
    match realize(expr)? {
        Realized::Explicit(b) => Ok(b),
        Realized::Symbolic(s) => Err(order_exceeded(Some(s.order))),
    }
}

fn shifted(p: &Perm, offset: usize, degree: usize) -> Perm {
    let mut images: Vec<usize> = (0..degree).collect();
    for (i, x) in p.images().enumerate() {
        images[offset + i] = offset + x;
    }
    Perm::from_images(images).unwrap()
}

/// Factors act on consecutive blocks of points; `factor_i` (1-based) names
/// the embedded copies.
pub fn direct_product(factors: &[BuiltGroup], expr: GroupExpr) -> Result<BuiltGroup> {
    let degree: usize = factors.iter().map(|f| f.group.degree()).sum::<usize>().max(1);
    let mut generators = Vec::new();
    let mut named = BTreeMap::new();
    let mut offset = 0;
    for (i, f) in factors.iter().enumerate() {
        let gens: Vec<Perm> = f
            .generators
            .iter()
            .map(|g| shifted(g, offset, degree))
            .collect();
        named.insert(format!("factor_{}", i + 1), PermGroup::new(degree, gens.clone())?);
        generators.extend(gens);
        offset += f.group.degree();
    }
    let group = PermGroup::new(degree, generators.clone())?;
    BuiltGroup {
        group,
        generators,
        named,
        expr,
    }
    .checked()
}

/// `S^k` extended by the shift sending block `b` to block `b + 1 mod k`.
pub fn shift_product(s: &BuiltGroup, k: usize, expr: GroupExpr) -> Result<BuiltGroup> {
    let copies: Vec<BuiltGroup> = vec![s.clone(); k];
    let base = direct_product(&copies, expr.clone())?;
    let d = s.group.degree();
    let degree = base.group.degree();
    let images: Vec<usize> = (0..degree).map(|x| (x + d) % degree).collect();
    let tau = Perm::from_images(images)?;
    let mut generators = base.generators.clone();
    if !tau.is_identity() {
        generators.push(tau.clone());
    }
    let group = PermGroup::new(degree, generators.clone())?;
    let mut named = base.named;
    named.insert("base".to_string(), base.group);
    named.insert("shift".to_string(), PermGroup::new(degree, vec![tau])?);
    BuiltGroup {
        group,
        generators,
        named,
        expr,
    }
    .checked()
}

/// `N:⟨α_1, ..., α_r⟩` acting on the elements of `N`: `N` by right
/// translation, each `α_i` by its action as an automorphism.
#[derive(Debug, Clone)]
pub struct Semidirect {
    pub built: BuiltGroup,
    /// The automorphisms as permutations of the points.
    pub auts: Vec<Perm>,
    base_group: PermGroup,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl Semidirect {
    /// The original base group `N`.
    pub fn base_group(&self) -> &PermGroup {
        &self.base_group
    }

    /// The right translation by `n`.
    pub fn from_base(&self, n: &Perm) -> Result<Perm> {
        let images = self
            .elements
            .iter()
            .map(|x| self.index.get(&x.compose(n)).copied().ok_or(Error::NotContained))
            .collect::<Result<Vec<_>>>()?;
        Perm::from_images(images)
    }

    /// Inverse of [`from_base`](Self::from_base) on the translation subgroup.
    pub fn to_base(&self, x: &Perm) -> Result<Perm> {
        if !self.built.named["base"].contains(x) {
            return Err(Error::NotContained);
        }
        Ok(self.elements[x.apply(0)].clone())
    }

    pub fn subgroup_to_base(&self, h: &PermGroup) -> Result<PermGroup> {
        let gens = h
            .generators()
            .iter()
            .map(|x| self.to_base(x))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(self.base_group.degree(), gens)
    }
}

pub fn eval_word(gens: &[Perm], w: &Word, degree: usize) -> Result<Perm> {
    let mut out = Perm::identity(degree);
    for &(i, e) in &w.0 {
        let g = gens.get(i).ok_or_else(|| {
            Error::InvalidAutomorphism(format!(
                "generator g{} does not exist (base has {})",
                i + 1,
                gens.len()
            ))
        })?;
        out = out.compose(&g.pow(e));
    }
    Ok(out)
}

pub fn semidirect_by_specs(n: &BuiltGroup, specs: &[AutSpec]) -> Result<Semidirect> {
    let degree = n.group.degree();
    let mut maps = Vec::new();
    for spec in specs {
        let mut images = n.generators.clone();
        for (i, w) in &spec.images {
            if *i >= images.len() {
                return Err(Error::InvalidAutomorphism(format!(
                    "generator g{} does not exist (base has {})",
                    i + 1,
                    images.len()
                )));
            }
            images[*i] = eval_word(&n.generators, w, degree)?;
        }
        maps.push(images);
    }
    semidirect_by_maps(n, &maps)
}

/// Each entry of `auts` lists the images of `n.generators` under one
/// automorphism; the maps are checked to extend to automorphisms.
pub fn semidirect_by_maps(n: &BuiltGroup, auts: &[Vec<Perm>]) -> Result<Semidirect> {
    let order = n.group.order();
    let b = Bounds::global();
    if order > b.max_degree as u64 {
        return Err(Error::BoundExceeded {
            what: "semidirect product degree",
            value: order,
            limit: b.max_degree as u64,
        });
    }
    let elements = n.group.elements();
    let index: HashMap<Perm, usize> = elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    let translation = |g: &Perm| -> Perm {
        let images = elements.iter().map(|x| index[&x.compose(g)]).collect();
        Perm::from_images(images).unwrap()
    };
    let base_gens: Vec<Perm> = n.generators.iter().map(translation).collect();
    let points = elements.len();
    let base = PermGroup::new(points, base_gens.clone())?;

    let mut aut_perms = Vec::new();
    for images in auts {
        let phi = extend_to_automorphism(n, images)?;
        let perm = Perm::from_images(elements.iter().map(|x| index[&phi[x]]).collect())?;
        aut_perms.push(perm);
    }
    let mut generators = base_gens;
    generators.extend(aut_perms.iter().filter(|p| !p.is_identity()).cloned());
    let group = PermGroup::new(points, generators.clone())?;
    let complement = PermGroup::new(points, aut_perms.clone())?;
    if group.order() != base.order() * complement.order() {
        return Err(Error::InvariantViolation(format!(
            "semidirect product has order {} but |N| |<auts>| = {}",
            group.order(),
            base.order() * complement.order()
        )));
    }
    let mut named = BTreeMap::new();
    named.insert("base".to_string(), base);
    named.insert("complement".to_string(), complement);
    let built = BuiltGroup {
        group,
        generators,
        named,
        expr: GroupExpr::SemidirectByAut {
            base: Box::new(n.expr.clone()),
            auts: Vec::new(),
        },
    }
    .checked()?;
    Ok(Semidirect {
        built,
        auts: aut_perms,
        base_group: n.group.clone(),
        elements,
        index,
    })
}

/// Extends generator images to a map on all of `N`, checking that it is a
/// bijective homomorphism: a breadth-first walk over the Cayley graph
/// assigns `φ(x g_i) = φ(x) φ(g_i)` and every edge must agree.
fn extend_to_automorphism(n: &BuiltGroup, images: &[Perm]) -> Result<HashMap<Perm, Perm>> {
    if images.len() != n.generators.len() {
        return Err(Error::InvalidAutomorphism(format!(
            "{} images for {} generators",
            images.len(),
            n.generators.len()
        )));
    }
    for (i, y) in images.iter().enumerate() {
        if y.degree() != n.group.degree() || !n.group.contains(y) {
            return Err(Error::InvalidAutomorphism(format!(
                "image of g{} is not in the base group",
                i + 1
            )));
        }
    }
    let id = n.group.identity();
    let mut phi: HashMap<Perm, Perm> = HashMap::new();
    phi.insert(id.clone(), id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        let fx = phi[&x].clone();
        for (g, y) in n.generators.iter().zip(images) {
            let xg = x.compose(g);
            let target = fx.compose(y);
            match phi.get(&xg) {
                Some(existing) if *existing != target => {
                    return Err(Error::InvalidAutomorphism(
                        "generator images do not define a homomorphism".into(),
                    ));
                }
                Some(_) => {}
                None => {
                    phi.insert(xg.clone(), target);
                    queue.push_back(xg);
                }
            }
        }
    }
    let distinct: std::collections::HashSet<&Perm> = phi.values().collect();
    if distinct.len() != phi.len() {
        return Err(Error::InvalidAutomorphism("map is not bijective".into()));
    }
    Ok(phi)
}

/// GL(3,2) on points and planes of PG(2,2), its extension by the duality
/// involution `ι`, and `ι` itself.
pub fn gl32_with_duality() -> (BuiltGroup, BuiltGroup, Perm) {
    let d = gl32_duality();
    let mut a_named = BTreeMap::new();
    a_named.insert("H1".to_string(), d.named["H1"].clone());
    a_named.insert("H2".to_string(), d.named["H2"].clone());
    let a = BuiltGroup {
        generators: d.socle.generators().to_vec(),
        group: d.socle.clone(),
        named: a_named,
        expr: GroupExpr::atom("GL32Duality", &[]),
    };
    let g = BuiltGroup {
        generators: d.group.generators().to_vec(),
        group: d.group,
        named: d.named,
        expr: GroupExpr::atom("GL32Duality", &[]),
    };
    (a, g, d.iota)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::parse_group_expr;
    use crate::perm_core::{conjugacy_witness, intersection, is_normal};

    fn b(text: &str) -> BuiltGroup {
        build(&parse_group_expr(text).unwrap()).unwrap()
    }

    #[test]
    fn atom_and_product_orders() {
        assert_eq!(b("GL(3,2)").group.order(), 168);
        let d = b("DirectProduct(Sym(3),Sym(3))");
        assert_eq!((d.group.order(), d.group.degree()), (36, 6));
        let (f1, f2) = (&d.named["factor_1"], &d.named["factor_2"]);
        assert!(intersection(f1, f2).unwrap().is_trivial());
        for x in f1.generators() {
            assert!(f2.generators().iter().all(|y| x.commutes_with(y)));
        }
    }

    #[test]
    fn semidirect_examples() {
        let f21 = b("SemidirectByAut(Cyclic(7), [g -> g^3])");
        assert_eq!(f21.group.order(), 21 * 2);
        let f21 = b("SemidirectByAut(Cyclic(7), [g -> g^2])");
        assert_eq!(f21.group.order(), 21);
        assert!(is_normal(&f21.group, &f21.named["base"]));
        let f20 = b("SemidirectByAut(Cyclic(5), [g -> g^2])");
        assert_eq!(f20.group.order(), 20);
        let a4 = b("SemidirectByAut(Dihedral(2), [g1 -> g2, g2 -> g1*g2])");
        assert_eq!(a4.group.order(), 12);
        let holo = b("SemidirectByAut(Cyclic(7), [g -> g^3], [g -> g^2])");
        assert_eq!(holo.group.order(), 42);
    }

    #[test]
    fn semidirect_rejects_bad_maps() {
        for text in [
            "SemidirectByAut(Cyclic(6), [g -> g^2])",
            "SemidirectByAut(Sym(3), [g1 -> g2, g2 -> g1])",
            "SemidirectByAut(Cyclic(7), [g3 -> g])",
        ] {
            let e = parse_group_expr(text).unwrap();
            assert!(matches!(build(&e), Err(Error::InvalidAutomorphism(_))), "{text}");
        }
    }

    #[test]
    fn base_round_trip() {
        let n = b("Dihedral(5)");
        let sd = semidirect_by_maps(&n, &[n.generators.clone()]).unwrap();
        assert_eq!(sd.built.group.order(), 10);
        for x in n.group.elements() {
            assert_eq!(sd.to_base(&sd.from_base(&x).unwrap()).unwrap(), x);
        }
    }

    #[test]
    fn shift_products() {
        let g = b("ShiftProduct(Sym(3), 2)");
        assert_eq!(g.group.order(), 72);
        assert!(is_normal(&g.group, &g.named["base"]));
        let e = parse_group_expr("ShiftProduct(GL(3,2), 5)").unwrap();
        match realize(&e).unwrap() {
            Realized::Symbolic(s) => {
                assert_eq!(s.order, 168u128.pow(5) * 5);
                assert_eq!(s.copies, 5);
                assert!(s.shifted);
            }
            Realized::Explicit(_) => panic!("built explicitly"),
        }
        assert!(build(&e).unwrap_err().is_bound());
    }

    #[test]
    fn duality_classes() {
        let (a, g, iota) = gl32_with_duality();
        let (h1, h2) = (&a.named["H1"], &a.named["H2"]);
        assert_eq!((h1.order(), h2.order()), (24, 24));
        assert!(conjugacy_witness(&a.group, h1, h2).unwrap().is_none());
        let w = conjugacy_witness(&g.group, h1, h2).unwrap().unwrap();
        assert!(h1.conjugate(&w).same_group(h2));
        assert!(!a.group.contains(&w));
        assert!(g.group.contains(&iota));
    }

    #[test]
    fn from_file() {
        let dir = std::env::temp_dir().join(format!("hallfrat-build-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("s4.grp");
        std::fs::write(&path, "degree 4\ngen (1 2)\ngen (1 2 3 4)\n").unwrap();
        let e = crate::constructions::parse_group_file(&path).unwrap();
        assert_eq!(build(&e).unwrap().group.order(), 24);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
