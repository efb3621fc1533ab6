use hallfrat::frattini::{frattini_constructive, frattini_oracle};
use hallfrat::hall::{hall_classes, in_e_pi, is_hall};
use hallfrat::perm_core::normal_subgroups;
use hallfrat::subgroup_enum::SubgroupLattice;
use hallfrat::{Perm, PermGroup, PrimeSet};
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

fn small_group() -> impl Strategy<Value = PermGroup> {
    (3usize..=6).prop_flat_map(|n| {
        proptest::collection::vec(perm(n), 1..=2).prop_map(move |gens| PermGroup::new(n, gens).unwrap())
    })
}

fn pi_for(g: &PermGroup, mask: u8) -> PrimeSet {
    let primes = hallfrat::hall::prime_divisors(g.order());
    let chosen = primes.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p);
    PrimeSet::new(chosen).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn chain_order_matches_closure(g in small_group()) {
        let naive = g.naive_closure_size(1000).unwrap();
        prop_assert_eq!(g.order(), naive as u64);
        for x in g.elements() {
            prop_assert!(g.contains(&x));
        }
    }

    #[test]
    fn hall_representatives_are_hall(g in small_group(), mask in 0u8..8) {
        let pi = pi_for(&g, mask);
        let analysis = hall_classes(&g, &pi).unwrap();
        for h in analysis.representatives() {
            prop_assert!(is_hall(&g, h, &pi));
        }
        let sizes: u64 = analysis.classes.iter().map(|c| c.class_size).sum();
        let lattice = SubgroupLattice::enumerate(&g).unwrap();
        let direct: u64 = lattice
            .classes()
            .iter()
            .filter(|c| c.order == analysis.target_order)
            .map(|c| c.class_size)
            .sum();
        prop_assert_eq!(sizes, direct);
    }

    #[test]
    fn frattini_holds_in_e_pi(g in small_group(), mask in 0u8..8) {
        let pi = pi_for(&g, mask);
        prop_assume!(in_e_pi(&g, &pi).unwrap());
        for a in normal_subgroups(&g).unwrap() {
            let w = frattini_oracle(&g, &a, &pi).unwrap();
            prop_assert!(w.checks.all());
            let c = frattini_constructive(&g, &a, &pi).unwrap();
            prop_assert!(c.checks.all());
            prop_assert!(is_hall(&a, &c.h, &pi));
        }
    }
}

#[test]
fn remark_reports_reproduce() {
    assert!(hallfrat::frattini::remark1_report().unwrap().reproduces());
    assert!(hallfrat::product_symbolic::remark2_report().unwrap().reproduces());
}

#[test]
fn small_corpus_run_is_clean() {
    let config = hallfrat::corpus::RunConfig::default().with_max_order(60);
    let report = hallfrat::corpus::run_corpus(&config, 1).unwrap();
    assert_eq!(report.all_violations().count(), 0);
    assert!(report.tally("theorem").checked > 0);
}
