//! GL(3,2) extended by the inverse-transpose automorphism: the socle is in
//! E_π for π = {2,3} but the extension is not, and no Hall class of the socle
//! is stable.

use serde::Serialize;

use super::{e_pi_criterion, frattini_oracle};
use crate::constructions::gl32_with_duality;
use crate::error::{Error, Result};
use crate::hall::{extend_hall_over_pi_quotient, hall_classes, pi_part, HallStatus, PrimeSet};
use crate::perm_core::{are_conjugate, normalizer};
use crate::subgroup_enum::{subgroups_of_order, ClassSummary, SubgroupLattice};

#[derive(Debug, Clone, Serialize)]
pub struct Remark1Report {
    pub pi: PrimeSet,
    pub socle_order: u64,
    pub group_order: u64,
    pub hall_order: u64,
    pub socle_status: HallStatus,
    pub socle_hall_classes: Vec<ClassSummary>,
    pub iota_order: u64,
    pub iota_outside_socle: bool,
    pub h1_h2_conjugate_in_socle: bool,
    pub h1_h2_conjugate_in_group: bool,
    pub iota_swaps_classes: bool,
    pub group_hall_order: u64,
    pub group_subgroups_of_hall_order: usize,
    pub group_in_e_pi: bool,
    pub socle_hall_subgroups_checked: usize,
    pub normalizers_inside_socle: bool,
    pub e_pi_criterion_verdict: bool,
    pub oracle_refuses: bool,
    pub h1_extends_to_group: bool,
}

impl Remark1Report {
    /// Whether every reported fact matches the expected counterexample.
    pub fn reproduces(&self) -> bool {
        self.socle_order == 168
            && self.group_order == 336
            && self.hall_order == 24
            && self.socle_hall_classes.len() == 2
            && self.socle_hall_classes.iter().all(|c| c.order == 24)
            && self.iota_order == 2
            && self.iota_outside_socle
            && !self.h1_h2_conjugate_in_socle
            && self.h1_h2_conjugate_in_group
            && self.iota_swaps_classes
            && self.group_hall_order == 48
            && self.group_subgroups_of_hall_order == 0
            && !self.group_in_e_pi
            && self.socle_hall_subgroups_checked == 14
            && self.normalizers_inside_socle
            && !self.e_pi_criterion_verdict
            && self.oracle_refuses
            && !self.h1_extends_to_group
    }
}

pub fn remark1_report() -> Result<Remark1Report> {
    let pi: PrimeSet = PrimeSet::new([2, 3])?;
    let (a, g, iota) = gl32_with_duality();
    let (socle, group) = (&a.group, &g.group);
    let (h1, h2) = (&a.named["H1"], &a.named["H2"]);

    let analysis = hall_classes(socle, &pi)?;
    let h1_iota = h1.conjugate(&iota);
    let iota_swaps_classes =
        are_conjugate(socle, &h1_iota, h2)? && !are_conjugate(socle, &h1_iota, h1)?;

    let group_hall_order = pi_part(group.order(), &pi);
    let big = subgroups_of_order(group, group_hall_order)?;

    let lattice = SubgroupLattice::enumerate_dividing(socle, analysis.target_order)?;
    let mut checked = 0;
    let mut inside = true;
    for (i, c) in lattice.classes().iter().enumerate() {
        if c.order != analysis.target_order {
            continue;
        }
        for bits in lattice.class_members(i) {
            let h = lattice.table().bits_to_group(&bits);
            checked += 1;
            inside &= socle.contains_group(&normalizer(group, &h)?);
        }
    }

    let (verdict, _) = e_pi_criterion(group, socle, &pi)?;
    let oracle_refuses = matches!(frattini_oracle(group, socle, &pi), Err(Error::NotEPi { .. }));
    let h1_extends = extend_hall_over_pi_quotient(group, socle, h1, &pi)?.is_some();

    Ok(Remark1Report {
        socle_order: socle.order(),
        group_order: group.order(),
        hall_order: analysis.target_order,
        socle_status: analysis.status,
        socle_hall_classes: analysis.classes.iter().map(|c| c.summary()).collect(),
        iota_order: iota.order(),
        iota_outside_socle: !socle.contains(&iota),
        h1_h2_conjugate_in_socle: are_conjugate(socle, h1, h2)?,
        h1_h2_conjugate_in_group: are_conjugate(group, h1, h2)?,
        iota_swaps_classes,
        group_hall_order,
        group_subgroups_of_hall_order: big.len(),
        group_in_e_pi: !big.is_empty(),
        socle_hall_subgroups_checked: checked,
        normalizers_inside_socle: inside,
        e_pi_criterion_verdict: verdict,
        oracle_refuses,
        h1_extends_to_group: h1_extends,
        pi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_counterexample() {
        let r = remark1_report().unwrap();
        assert!(r.reproduces(), "{r:#?}");
        assert_eq!(r.socle_status, HallStatus::EOnly);
    }
}
