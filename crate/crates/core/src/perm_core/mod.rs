//! Exact permutation-group arithmetic.

mod chain;
mod group;
mod normal;
mod perm;
mod quotient;
mod subgroups;

pub use group::PermGroup;
pub use normal::{
    conjugacy_class_reps, derived_series, derived_subgroup, is_minimal_normal, is_simple, is_subnormal,
    is_solvable, minimal_normal_subgroups, normal_closure, normal_closure_of, normal_subgroups,
    socle_components, SocleComponents,
};
pub(crate) use normal::smallest_prime_factor;
pub use perm::Perm;
pub(crate) use perm::{gcd, lcm};
pub use quotient::{induced_aut_group, quotient_action, Epimorphism, InducedAutGroup};
pub use subgroups::{
    are_conjugate, centralizer, class_is_stable, conjugacy_witness, ensure_normal,
    ensure_subgroup, intersection, is_normal, normalizer, normalizer_brute, product_order,
    right_transversal, RightCosets,
};
