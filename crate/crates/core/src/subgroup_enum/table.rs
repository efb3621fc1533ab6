//! Element-indexed view of a small group: every element gets an index, and
//! products, inverses and conjugates become table lookups. Subgroups are
//! bitsets over the element indices.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::config::Bounds;
use crate::error::Result;
use crate::perm_core::{Perm, PermGroup};

/// Bitset over element indices of an [`ElementTable`].
pub type Bits = FixedBitSet;

pub struct ElementTable {
    group: PermGroup,
    elements: Vec<Perm>,
    base: Vec<usize>,
    keys: HashMap<Vec<u32>, u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<u32>,
    gens: Vec<u32>,
}

impl ElementTable {
    pub fn new(group: &PermGroup) -> Result<Self> {
        Bounds::global().check_enumeration(group.order())?;
        Ok(Self::build(group))
    }

    pub(crate) fn build(group: &PermGroup) -> Self {
        let elements = group.elements();
        let n = elements.len();
        // an element is determined by its base images
        let base = group.base();
        let key_of = |p: &Perm| -> Vec<u32> { base.iter().map(|&b| p.apply(b) as u32).collect() };
        let keys: HashMap<Vec<u32>, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (key_of(p), i as u32))
            .collect();
        // base images of each element, to compose on the base only
        let images: Vec<Vec<u32>> = elements.iter().map(key_of).collect();
        let mut mul = vec![0u32; n * n];
        let mut key = vec![0u32; base.len()];
        for a in 0..n {
            let ia = &images[a];
            for (b, pb) in elements.iter().enumerate() {
                for (slot, &x) in key.iter_mut().zip(ia.iter()) {
                    *slot = pb.apply(x as usize) as u32;
                }
                mul[a * n + b] = keys[&key];
            }
        }
        let mut inv = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        let orders = elements.iter().map(|p| p.order() as u32).collect();
        let gens = group
            .generators()
            .iter()
            .map(|g| keys[&key_of(g)])
            .collect();
        ElementTable {
            group: group.clone(),
            elements,
            base,
            keys,
            mul,
            inv,
            orders,
            gens,
        }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: u32) -> &Perm {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        let key: Vec<u32> = self.base.iter().map(|&b| p.apply(b) as u32).collect();
        let i = *self.keys.get(&key)?;
        (self.elements[i as usize] == *p).then_some(i)
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.elements.len() + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    #[inline]
    pub fn order_of(&self, a: u32) -> u32 {
        self.orders[a as usize]
    }

    /// `x^g`.
    #[inline]
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.gens
    }

    pub fn empty_bits(&self) -> Bits {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn trivial_bits(&self) -> Bits {
        let mut b = self.empty_bits();
        b.insert(0);
        b
    }

    pub fn full_bits(&self) -> Bits {
        let mut b = self.empty_bits();
        b.insert_range(..);
        b
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Bits {
        self.closure_capped(&self.trivial_bits(), gens, usize::MAX)
            .expect("uncapped closure")
    }

    /// Subgroup generated by the subgroup `start` and `gens`; `None` as soon as
    /// it exceeds `cap` elements.
    pub fn closure_capped(&self, start: &Bits, gens: &[u32], cap: usize) -> Option<Bits> {
        let mut bits = start.clone();
        let mut list: Vec<u32> = start.ones().map(|i| i as u32).collect();
        if list.len() > cap {
            return None;
        }
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &s in gens {
                let y = self.mul(x, s);
                if !bits.put(y as usize) {
                    list.push(y);
                    if list.len() > cap {
                        return None;
                    }
                }
            }
            i += 1;
        }
        Some(bits)
    }

    pub fn conjugate_bits(&self, bits: &Bits, g: u32) -> Bits {
        let mut out = self.empty_bits();
        for x in bits.ones() {
            out.insert(self.conj(x as u32, g) as usize);
        }
        out
    }

    /// Elements normalizing the subgroup generated by `gens` (whose closure is `bits`).
    pub fn normalizer_bits(&self, bits: &Bits, gens: &[u32]) -> Bits {
        let mut out = self.empty_bits();
        for g in 0..self.len() as u32 {
            if gens.iter().all(|&s| bits.contains(self.conj(s, g) as usize)) {
                out.insert(g as usize);
            }
        }
        out
    }

    /// All conjugates of a subgroup, starting with itself.
    pub fn conjugates(&self, bits: &Bits) -> Vec<Bits> {
        let mut seen: std::collections::HashSet<Bits> = std::collections::HashSet::new();
        seen.insert(bits.clone());
        let mut out = vec![bits.clone()];
        let mut i = 0;
        while i < out.len() {
            for &g in &self.gens {
                let c = self.conjugate_bits(&out[i], g);
                if seen.insert(c.clone()) {
                    out.push(c);
                }
            }
            i += 1;
        }
        out
    }

    pub fn bits_of(&self, h: &PermGroup) -> Option<Bits> {
        let mut bits = self.empty_bits();
        let gens: Option<Vec<u32>> = h.generators().iter().map(|g| self.index_of(g)).collect();
        let gens = gens?;
        bits.union_with(&self.closure(&gens));
        Some(bits)
    }

    pub fn to_group(&self, gens: &[u32]) -> PermGroup {
        let perms = gens.iter().map(|&i| self.elements[i as usize].clone()).collect();
        PermGroup::new(self.group.degree(), perms).unwrap()
    }

    /// A small generating set for the subgroup `bits`, greedily in index order.
    pub fn generators_of(&self, bits: &Bits) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut current = self.trivial_bits();
        let target = bits.count_ones(..);
        for x in bits.ones() {
            if current.count_ones(..) == target {
                break;
            }
            if !current.contains(x) {
                gens.push(x as u32);
                current = self.closure_capped(&current, &gens, usize::MAX).unwrap();
            }
        }
        gens
    }

    pub fn bits_to_group(&self, bits: &Bits) -> PermGroup {
        self.to_group(&self.generators_of(bits))
    }
}
