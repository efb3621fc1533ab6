//! Example groups and compositions, built from a small expression language.

mod atoms;
mod build;
mod expr;
mod parse;

pub use atoms::{gl32_duality, Gl32Duality};
pub use build::{
    build, direct_product, eval_word, gl32_with_duality, realize, semidirect_by_maps,
    semidirect_by_specs, shift_product, BuiltGroup, Realized, Semidirect, SymbolicProduct,
};
pub use expr::{AutSpec, GroupExpr, Word};
pub use parse::{
    parse_group_expr, parse_group_file, parse_group_file_text, read_group_file, write_group_file,
    GroupFile,
};

/// Parses and builds in one step.
pub fn build_str(text: &str) -> crate::Result<BuiltGroup> {
    build(&parse_group_expr(text)?)
}
