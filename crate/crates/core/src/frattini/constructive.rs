//! The inductive construction of a Hall subgroup `H` of `A` with
//! `G = A N_G(H)`, checking every intermediate claim as it goes.

use super::witness::{Case, TraceStep};
use crate::error::{Error, Result};
use crate::hall::{hall_classes, is_hall, pi_part, PrimeSet};
use crate::perm_core::{
    class_is_stable, conjugacy_witness, ensure_normal, ensure_subgroup, induced_aut_group,
    intersection, is_simple, minimal_normal_subgroups, normal_closure, normalizer,
    quotient_action, right_transversal, smallest_prime_factor, Perm, PermGroup,
};
use crate::subgroup_enum::subgroups_of_order;

fn violation(msg: impl Into<String>) -> Error {
    Error::InvariantViolation(msg.into())
}

/// A Hall subgroup `U` of the simple subnormal subgroup `S` whose class is
/// stable under `Aut_G(S)`.
pub fn find_fusion_stable_hall(g: &PermGroup, s: &PermGroup, pi: &PrimeSet) -> Result<PermGroup> {
    ensure_subgroup(g, s)?;
    if !crate::perm_core::is_subnormal(g, s)? || !is_simple(s)? {
        return Err(Error::Precondition("S is not a simple subnormal subgroup".into()));
    }
    let aut = induced_aut_group(g, s)?;
    if !hall_classes(aut.image(), pi)?.status.is_e() {
        return Err(Error::NotEPi { pi: pi.to_string() });
    }
    let n = aut.normalizer();
    for u in hall_classes(s, pi)?.classes {
        if class_is_stable(n, s, &u.representative)? {
            return Ok(u.representative);
        }
    }
    Err(violation("no Hall class of S is stable under Aut_G(S)"))
}

/// `V = ⟨U^{g_1}, ..., U^{g_n}⟩` over a right transversal of `N_G(S)`,
/// checked to be a Hall subgroup of `⟨S^G⟩` with `V^G = V^A`.
pub fn build_invariant_product_hall(
    g: &PermGroup,
    s: &PermGroup,
    u: &PermGroup,
    pi: &PrimeSet,
) -> Result<PermGroup> {
    ensure_subgroup(s, u)?;
    let ns = normalizer(g, s)?;
    let transversal = right_transversal(g, &ns)?;
    let mut gens: Vec<Perm> = Vec::new();
    for t in &transversal {
        gens.extend(u.generators().iter().map(|x| x.conjugate_by(t)));
    }
    let v = PermGroup::new(g.degree(), gens)?;
    let a = normal_closure(g, s)?;
    if !s.is_abelian() {
        let expected = u.order().checked_pow(transversal.len() as u32);
        if expected != Some(v.order()) {
            return Err(violation(format!(
                "conjugates of U generate a group of order {}, not |U|^{}",
                v.order(),
                transversal.len()
            )));
        }
    }
    if is_hall(s, u, pi) && !is_hall(&a, &v, pi) {
        return Err(violation("V is not a Hall subgroup of the normal closure of S"));
    }
    if !class_is_stable(g, &a, &v)? {
        return Err(violation("V^G differs from V^A"));
    }
    Ok(v)
}

/// A complement to the normal π'-subgroup `M` of `X` when `X/M` is a π-group.
pub fn schur_zassenhaus_complement(x: &PermGroup, m: &PermGroup, pi: &PrimeSet) -> Result<PermGroup> {
    ensure_normal(x, m)?;
    if !pi.complement().is_pi_number(m.order()) {
        return Err(Error::Precondition("M is not a π'-group".into()));
    }
    let index = x.order() / m.order();
    if !pi.is_pi_number(index) {
        return Err(Error::Precondition("X/M is not a π-group".into()));
    }
    let target = pi_part(x.order(), pi);
    let h = if target == 1 {
        PermGroup::trivial(x.degree())
    } else {
        subgroups_of_order(x, target)?
            .into_iter()
            .next()
            .map(|c| c.representative)
            .ok_or_else(|| violation("no complement found"))?
    };
    if !intersection(&h, m)?.is_trivial() || h.order() * m.order() != x.order() {
        return Err(violation("subgroup of complement order is not a complement"));
    }
    Ok(h)
}

/// An element of `X` conjugating the complement `h1` to `h2`.
pub fn conjugate_complements(
    x: &PermGroup,
    m: &PermGroup,
    h1: &PermGroup,
    h2: &PermGroup,
) -> Result<Perm> {
    for h in [h1, h2] {
        if !intersection(h, m)?.is_trivial() || h.order() * m.order() != x.order() {
            return Err(Error::Precondition("not a complement".into()));
        }
    }
    conjugacy_witness(x, h1, h2)?.ok_or_else(|| violation("complements are not conjugate"))
}

pub(crate) struct Solver<'a> {
    pub pi: &'a PrimeSet,
    pub trace: Vec<TraceStep>,
}

impl Solver<'_> {
    fn record(
        &mut self,
        depth: usize,
        case: Case,
        g: &PermGroup,
        a: &PermGroup,
        m: Option<&PermGroup>,
        h: &PermGroup,
    ) {
        self.trace.push(TraceStep {
            depth,
            case,
            group_order: g.order(),
            normal_order: a.order(),
            minimal_normal_order: m.map(|m| m.order()),
            result_order: h.order(),
        });
    }

    /// `A` minimal normal in `G`.
    fn minimal_case(&mut self, g: &PermGroup, a: &PermGroup, depth: usize) -> Result<PermGroup> {
        let v = if a.is_abelian() {
            if self.pi.contains(smallest_prime_factor(a.order())) {
                a.clone()
            } else {
                PermGroup::trivial(g.degree())
            }
        } else {
            let comps = minimal_normal_subgroups(a)?;
            let s = &comps[0];
            let u = match find_fusion_stable_hall(g, s, self.pi) {
                Err(Error::NotEPi { .. }) => {
                    return Err(violation("Aut_G(S) is not in E_pi although G is"));
                }
                other => other?,
            };
            build_invariant_product_hall(g, s, &u, self.pi)?
        };
        if !is_hall(a, &v, self.pi) || !class_is_stable(g, a, &v)? {
            return Err(violation("minimal normal step did not give a stable Hall subgroup"));
        }
        self.record(depth, Case::MinimalNormal, g, a, None, &v);
        Ok(v)
    }

    pub fn solve(&mut self, g: &PermGroup, a: &PermGroup, depth: usize) -> Result<PermGroup> {
        if a.is_trivial() {
            let h = PermGroup::trivial(g.degree());
            self.record(depth, Case::TrivialNormal, g, a, None, &h);
            return Ok(h);
        }
        if is_simple(g)? {
            let h = hall_classes(g, self.pi)?
                .classes
                .into_iter()
                .next()
                .map(|c| c.representative)
                .ok_or_else(|| violation("simple group lost its Hall subgroups"))?;
            self.record(depth, Case::SimpleGroup, g, a, None, &h);
            return Ok(h);
        }
        let mins: Vec<PermGroup> = minimal_normal_subgroups(g)?
            .into_iter()
            .filter(|m| a.contains_group(m))
            .collect();
        if mins.iter().any(|m| m.order() == a.order()) {
            return self.minimal_case(g, a, depth);
        }
        let m = mins
            .into_iter()
            .next()
            .ok_or_else(|| violation("nontrivial normal subgroup contains no minimal normal subgroup"))?;
        let v = self.minimal_case(g, &m, depth + 1)?;
        let k = normalizer(g, &v)?;
        let h = if k.order() < g.order() {
            let ka = intersection(&k, a)?;
            if !self.pi.complement().is_pi_number(a.order() / ka.order()) {
                return Err(violation("|A : K ∩ A| is not a π'-number"));
            }
            let h = self.solve(&k, &ka, depth + 1)?;
            self.record(depth, Case::RecurseInK, g, a, Some(&m), &h);
            h
        } else {
            let epi = quotient_action(g, &m)?;
            let abar = epi.image_of(a);
            let xbar = self.solve(epi.image(), &abar, depth + 1)?;
            let x = epi.preimage(&xbar)?;
            if !v.is_trivial() {
                // V is normal in G and Hall in the minimal normal M, so M = V
                if !m.same_group(&v) {
                    return Err(violation("V ≠ 1 but M ≠ V; needs review"));
                }
                self.record(depth, Case::QuotientLift, g, a, Some(&m), &x);
                x
            } else {
                // recorded child first: the trace is reversed at the end
                let h = schur_zassenhaus_complement(&x, &m, self.pi)?;
                self.record(depth + 1, Case::SchurZassenhaus, &x, &m, Some(&m), &h);
                self.record(depth, Case::QuotientLift, g, a, Some(&m), &x);
                h
            }
        };
        if !is_hall(a, &h, self.pi) {
            return Err(violation(format!(
                "step produced a subgroup of order {} instead of {}",
                h.order(),
                pi_part(a.order(), self.pi)
            )));
        }
        Ok(h)
    }
}
