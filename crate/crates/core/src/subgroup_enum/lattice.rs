//! Conjugacy classes of subgroups by cyclic extension.
//!
//! Every finite group is generated by its elements of prime-power order, so
//! every subgroup `K` is reached along a chain `1 < <z1> < <z1,z2> < ...`
//! inside `K`. Keeping one representative per class and extending it by one
//! representative of each orbit of its normalizer on the cyclic subgroups of
//! prime-power order therefore finds every class. Restricting to subgroups
//! whose order divides `m` is exact for the same reason: every link in such
//! a chain for `K` has order dividing `|K|`.

use std::collections::HashSet;

use super::table::{Bits, ElementTable};
use crate::error::Result;
use crate::perm_core::PermGroup;

#[derive(Debug, Clone)]
pub struct ClassRecord {
    pub rep: Bits,
    /// Element indices generating `rep`.
    pub gens: Vec<u32>,
    pub order: u64,
    pub class_size: u64,
}

pub struct SubgroupLattice {
    table: ElementTable,
    classes: Vec<ClassRecord>,
    divisor: Option<u64>,
}

fn is_prime_power(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while n % p != 0 {
        p += 1;
    }
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

impl SubgroupLattice {
    /// All classes of subgroups of `g`.
    pub fn enumerate(g: &PermGroup) -> Result<Self> {
        Ok(Self::from_table(ElementTable::new(g)?, None))
    }

    /// All classes of subgroups of `g` whose order divides `divisor`.
    pub fn enumerate_dividing(g: &PermGroup, divisor: u64) -> Result<Self> {
        Ok(Self::from_table(ElementTable::new(g)?, Some(divisor)))
    }

    pub fn from_table(table: ElementTable, divisor: Option<u64>) -> Self {
        let n = table.len();
        let limit = divisor.unwrap_or(n as u64);
        let fits = |order: u64| limit % order == 0;

        // canonical generator of each cyclic subgroup of prime-power order
        let mut cyc_of = vec![u32::MAX; n];
        let mut zuppos: Vec<u32> = Vec::new();
        for e in 0..n as u32 {
            let ord = table.order_of(e);
            if cyc_of[e as usize] != u32::MAX || !is_prime_power(ord) || !fits(ord as u64) {
                continue;
            }
            zuppos.push(e);
            let mut x = e;
            for k in 1..=ord {
                if crate::perm_core::gcd(k as u64, ord as u64) == 1 {
                    cyc_of[x as usize] = e;
                }
                x = table.mul(x, e);
            }
        }

        let mut known: HashSet<Bits> = HashSet::new();
        let mut rejected: HashSet<Bits> = HashSet::new();
        let trivial = table.trivial_bits();
        known.insert(trivial.clone());
        let mut classes = vec![ClassRecord {
            rep: trivial,
            gens: Vec::new(),
            order: 1,
            class_size: 1,
        }];

        let mut next = 0;
        while next < classes.len() {
            let rep = classes[next].rep.clone();
            let rep_gens = classes[next].gens.clone();
            let rep_order = classes[next].order;
            next += 1;
            if rep_order == limit {
                continue;
            }
            let norm = table.normalizer_bits(&rep, &rep_gens);
            let norm_elems: Vec<u32> = norm.ones().map(|i| i as u32).collect();
            let mut done = vec![false; n];
            for &z in &zuppos {
                if done[z as usize] || rep.contains(z as usize) {
                    continue;
                }
                for &x in &norm_elems {
                    done[cyc_of[table.conj(z, x) as usize] as usize] = true;
                }
                // |<R, z>| is a multiple of lcm(|R|, |z|) and at least |R| |<z> : <z> ∩ R|
                let ord = table.order_of(z) as u64;
                let mut meet = 1u64;
                let mut y = z;
                for _ in 1..ord {
                    if rep.contains(y as usize) {
                        meet += 1;
                    }
                    y = table.mul(y, z);
                }
                if !fits(crate::perm_core::lcm(rep_order, ord)) || rep_order * (ord / meet) > limit {
                    continue;
                }
                let mut gens = rep_gens.clone();
                gens.push(z);
                let Some(k) = table.closure_capped(&rep, &gens, limit as usize) else {
                    continue;
                };
                let order = k.count_ones(..) as u64;
                if known.contains(&k) || rejected.contains(&k) {
                    continue;
                }
                if !fits(order) {
                    rejected.insert(k);
                    continue;
                }
                let conjugates = table.conjugates(&k);
                let class_size = conjugates.len() as u64;
                for c in conjugates {
                    known.insert(c);
                }
                classes.push(ClassRecord {
                    rep: k,
                    gens,
                    order,
                    class_size,
                });
            }
        }

        classes.sort_by(|a, b| {
            (a.order, a.class_size)
                .cmp(&(b.order, b.class_size))
                .then_with(|| a.rep.ones().cmp(b.rep.ones()))
        });
        SubgroupLattice {
            table,
            classes,
            divisor,
        }
    }

    pub fn table(&self) -> &ElementTable {
        &self.table
    }

    pub fn classes(&self) -> &[ClassRecord] {
        &self.classes
    }

    pub fn divisor(&self) -> Option<u64> {
        self.divisor
    }

    /// Every subgroup in class `i`.
    pub fn class_members(&self, i: usize) -> Vec<Bits> {
        self.table.conjugates(&self.classes[i].rep)
    }

    pub fn total_subgroups(&self) -> u64 {
        self.classes.iter().map(|c| c.class_size).sum()
    }

    pub fn rep_group(&self, i: usize) -> PermGroup {
        self.table.to_group(&self.classes[i].gens)
    }
}
