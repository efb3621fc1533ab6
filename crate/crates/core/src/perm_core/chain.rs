//! Deterministic Schreier–Sims.
//!
//! Base points are always the smallest point moved by the generators that
//! fix every earlier base point, so two runs on the same generator list give
//! identical chains and identical transversal orders.

use super::perm::Perm;

#[derive(Debug, Clone)]
pub(crate) struct Level {
    pub base: usize,
    /// Strong generators fixing every earlier base point.
    pub gens: Vec<Perm>,
    /// Basic orbit in discovery order; `orbit[0] == base`.
    pub orbit: Vec<usize>,
    /// `transversal[p]` maps `base` to `p`.
    pub transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(degree: usize, base: usize, gens: Vec<Perm>) -> Self {
        let mut level = Level {
            base,
            gens,
            orbit: Vec::new(),
            transversal: vec![None; degree],
        };
        level.rebuild_orbit();
        level
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.orbit.clear();
        self.transversal[self.base] = Some(Perm::identity(degree));
        self.orbit.push(self.base);
        let mut i = 0;
        while i < self.orbit.len() {
            let p = self.orbit[i];
            for s in &self.gens {
                let q = s.apply(p);
                if self.transversal[q].is_none() {
                    let rep = self.transversal[p].as_ref().unwrap().compose(s);
                    self.transversal[q] = Some(rep);
                    self.orbit.push(q);
                }
            }
            i += 1;
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct StabChain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

impl StabChain {
    pub fn build(degree: usize, gens: &[Perm]) -> Self {
        let strong: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut base: Vec<usize> = Vec::new();
        loop {
            let next = strong
                .iter()
                .filter(|g| base.iter().all(|&b| g.apply(b) == b))
                .filter_map(|g| g.smallest_moved_point())
                .min();
            match next {
                Some(p) => base.push(p),
                None => break,
            }
        }
        let levels = base
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                let gens = strong
                    .iter()
                    .filter(|g| base[..i].iter().all(|&c| g.apply(c) == c))
                    .cloned()
                    .collect();
                Level::new(degree, b, gens)
            })
            .collect();
        let mut chain = StabChain { degree, levels };
        chain.complete();
        chain
    }

    /// Runs the Schreier–Sims loop until every Schreier generator sifts.
    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let mut restart_at = None;
            'scan: for oi in 0..self.levels[lvl].orbit.len() {
                let beta = self.levels[lvl].orbit[oi];
                for si in 0..self.levels[lvl].gens.len() {
                    let level = &self.levels[lvl];
                    let s = &level.gens[si];
                    let u_beta = level.transversal[beta].as_ref().unwrap();
                    let img = s.apply(beta);
                    let u_img = level.transversal[img].as_ref().unwrap();
                    let h = u_beta.compose(s).compose(&u_img.inverse());
                    let (residue, depth) = self.strip(h, lvl + 1);
                    if depth < self.levels.len() || !residue.is_identity() {
                        if depth == self.levels.len() {
                            let p = residue.smallest_moved_point().unwrap();
                            self.levels.push(Level::new(self.degree, p, Vec::new()));
                        }
                        for l in lvl + 1..=depth {
                            self.levels[l].gens.push(residue.clone());
                            self.levels[l].rebuild_orbit();
                        }
                        restart_at = Some(depth);
                        break 'scan;
                    }
                }
            }
            match restart_at {
                Some(d) => i = d as isize,
                None => i -= 1,
            }
        }
    }

    /// Sifts `g` from level `start`; returns the residue and the level at
    /// which sifting stopped (`levels.len()` when all levels passed).
    pub fn strip(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let beta = g.apply(level.base);
            match &level.transversal[beta] {
                Some(u) => g = g.compose(&u.inverse()),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, depth) = self.strip(g.clone(), 0);
        depth == self.levels.len() && residue.is_identity()
    }

    pub fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Every element, identity first, in a fixed order determined by the chain.
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = vec![Perm::identity(self.degree)];
        // g = t_{k-1} ... t_1 t_0 with t_l from level l
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for g in &out {
                for &p in &level.orbit {
                    next.push(g.compose(level.transversal[p].as_ref().unwrap()));
                }
            }
            out = next;
        }
        out
    }

    /// Canonical element of the right coset `H g` for the group `H` of this
    /// chain: the coset element whose base image sequence is lexicographically
    /// least.
    pub fn canonical_right_coset_rep(&self, g: &Perm) -> Perm {
        let mut x = g.clone();
        for level in &self.levels {
            let best = level
                .orbit
                .iter()
                .copied()
                .min_by_key(|&gamma| x.apply(gamma))
                .unwrap();
            x = level.transversal[best].as_ref().unwrap().compose(&x);
        }
        x
    }
}
