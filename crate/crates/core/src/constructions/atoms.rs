//! Named groups: symmetric, alternating, cyclic, dihedral, GL(3,2) and the
//! projective groups PSL(2,p), PGL(2,p).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::perm_core::{Perm, PermGroup};

pub(crate) struct Atom {
    pub group: PermGroup,
    pub generators: Vec<Perm>,
    pub named: BTreeMap<String, PermGroup>,
}

impl Atom {
    fn plain(group: PermGroup) -> Self {
        Atom {
            generators: group.generators().to_vec(),
            group,
            named: BTreeMap::new(),
        }
    }
}

fn param(name: &str, params: &[u64], lo: u64, hi: u64) -> Result<usize> {
    match params {
        [n] if (lo..=hi).contains(n) => Ok(*n as usize),
        _ => Err(Error::UnsupportedAtom(format!(
            "{name}({}) needs one parameter in {lo}..={hi}",
            params.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        ))),
    }
}

pub(crate) fn atom(name: &str, params: &[u64]) -> Result<Atom> {
    match name {
        "Sym" => Ok(Atom::plain(PermGroup::symmetric(param(name, params, 1, 12)?))),
        "Alt" => Ok(Atom::plain(PermGroup::alternating(param(name, params, 1, 12)?))),
        "Cyclic" => Ok(Atom::plain(PermGroup::cyclic(param(name, params, 1, 100)?))),
        "Dihedral" => Ok(Atom::plain(PermGroup::dihedral(param(name, params, 1, 100)?))),
        "GL" if params == [3, 2] => Ok(gl32_points()),
        "PSL" | "PGL" => match params {
            [2, p] if [5, 7, 11].contains(p) => Ok(Atom::plain(projective(*p, name == "PGL"))),
            _ => Err(Error::UnsupportedAtom(format!(
                "{name} is supported for (2,5), (2,7), (2,11)"
            ))),
        },
        "GL32Duality" if params.is_empty() => {
            let d = gl32_duality();
            Ok(Atom {
                generators: d.group.generators().to_vec(),
                group: d.group,
                named: d.named,
            })
        }
        _ => Err(Error::UnsupportedAtom(format!(
            "{name}({})",
            params.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        ))),
    }
}

/// A 3x3 matrix over GF(2), rows as bit masks (bit j = coordinate j+1).
type Mat = [u8; 3];

/// Row vector times matrix.
fn apply(v: u8, m: &Mat) -> u8 {
    (0..3).filter(|j| v >> j & 1 == 1).fold(0, |acc, j| acc ^ m[j])
}

fn dot(v: u8, w: u8) -> u8 {
    (v & w).count_ones() as u8 & 1
}

/// Nonzero vectors `v` are points `v - 1`.
fn on_vectors(m: &Mat) -> Vec<usize> {
    (1..8u8).map(|v| apply(v, m) as usize - 1).collect()
}

/// Planes `w⊥` are indexed by their normal `w`; `M` sends `w⊥` to `w'⊥`.
fn on_planes(m: &Mat) -> Vec<usize> {
    (1..8u8)
        .map(|w| {
            let image: Vec<u8> = (1..8u8).filter(|&v| dot(v, w) == 0).map(|v| apply(v, m)).collect();
            let w2 = (1..8u8)
                .find(|&w2| image.iter().all(|&u| dot(u, w2) == 0))
                .unwrap();
            w2 as usize - 1
        })
        .collect()
}

fn gl32_matrices() -> [Mat; 2] {
    // the transvection e1 -> e1 + e2, and the cyclic permutation of coordinates
    [[0b011, 0b010, 0b100], [0b010, 0b100, 0b001]]
}

pub(crate) const E3_POINT: usize = 3;
pub(crate) const E1_PLANE: usize = 0;

fn set_stabilizer(g: &PermGroup, set: &[usize]) -> PermGroup {
    let gens: Vec<Perm> = g
        .elements()
        .into_iter()
        .filter(|x| set.iter().all(|p| set.contains(&x.apply(*p))))
        .collect();
    PermGroup::new(g.degree(), gens).unwrap()
}

/// GL(3,2) on the 7 nonzero vectors, with the stabilizer of a vector and of
/// a plane as `H1` and `H2`.
fn gl32_points() -> Atom {
    let gens: Vec<Perm> = gl32_matrices()
        .iter()
        .map(|m| Perm::from_images(on_vectors(m)).unwrap())
        .collect();
    let group = PermGroup::new(7, gens.clone()).unwrap();
    let h1 = group.point_stabilizer(E3_POINT);
    let plane: Vec<usize> = (1..8u8)
        .filter(|&v| dot(v, E1_PLANE as u8 + 1) == 0)
        .map(|v| v as usize - 1)
        .collect();
    let h2 = set_stabilizer(&group, &plane);
    let mut named = BTreeMap::new();
    named.insert("H1".to_string(), h1);
    named.insert("H2".to_string(), h2);
    Atom {
        group,
        generators: gens,
        named,
    }
}

pub struct Gl32Duality {
    /// GL(3,2) on 7 points and 7 planes.
    pub socle: PermGroup,
    /// `⟨socle, iota⟩`.
    pub group: PermGroup,
    pub iota: Perm,
    pub named: BTreeMap<String, PermGroup>,
}

/// GL(3,2) acting on points `0..7` and planes `7..14` of PG(2,2), extended by
/// the involution swapping each vector with the plane it is normal to.
pub fn gl32_duality() -> Gl32Duality {
    let gens: Vec<Perm> = gl32_matrices()
        .iter()
        .map(|m| {
            let mut images = on_vectors(m);
            images.extend(on_planes(m).into_iter().map(|w| w + 7));
            Perm::from_images(images).unwrap()
        })
        .collect();
    let socle = PermGroup::new(14, gens).unwrap();
    let iota = Perm::from_cycles(14, &(0..7).map(|i| vec![i, i + 7]).collect::<Vec<_>>()).unwrap();
    let group = socle.join(&[iota.clone()]).unwrap();
    let h1 = socle.point_stabilizer(E3_POINT);
    let h2 = socle.point_stabilizer(7 + E1_PLANE);
    let mut named = BTreeMap::new();
    named.insert("socle".to_string(), socle.clone());
    named.insert("H1".to_string(), h1);
    named.insert("H2".to_string(), h2);
    named.insert("iota".to_string(), PermGroup::new(14, vec![iota.clone()]).unwrap());
    Gl32Duality {
        socle,
        group,
        iota,
        named,
    }
}

fn inv_mod(x: u64, p: u64) -> u64 {
    (1..p).find(|y| x * y % p == 1).unwrap()
}

fn primitive_root(p: u64) -> u64 {
    (2..p)
        .find(|&a| {
            let mut x = 1;
            (1..p - 1).all(|_| {
                x = x * a % p;
                x != 1
            })
        })
        .unwrap()
}

/// PSL(2,p) or PGL(2,p) on the projective line, `∞` as point `p`.
fn projective(p: u64, full: bool) -> PermGroup {
    let inf = p as usize;
    let n = inf + 1;
    let map = |f: &dyn Fn(u64) -> usize, at_inf: usize| -> Perm {
        let mut images: Vec<usize> = (0..p).map(f).collect();
        images.push(at_inf);
        Perm::from_images(images).unwrap()
    };
    let t = map(&|x| ((x + 1) % p) as usize, inf);
    let s = map(&|x| if x == 0 { inf } else { (p - inv_mod(x, p)) as usize }, 0);
    let mut gens = vec![t, s];
    if full {
        let a = primitive_root(p);
        gens.push(map(&|x| (a * x % p) as usize, inf));
    }
    PermGroup::new(n, gens).unwrap()
}
