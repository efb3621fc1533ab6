//! Exact computation with finite permutation groups, centred on Hall
//! subgroups: existence and conjugacy (`E_pi` / `C_pi`), class fusion under
//! overgroups, and the Frattini argument for Hall subgroups of normal
//! subgroups, both by exhaustive search and by a step-checked recursive
//! construction.

pub mod config;
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod frattini;
pub mod hall;
pub mod perm_core;
pub mod product_symbolic;
pub mod subgroup_enum;

pub use error::{Error, Result};
pub use hall::PrimeSet;
pub use perm_core::{Perm, PermGroup};
