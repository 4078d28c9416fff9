//! Integer class functions on Sylow subgroups, permutation characters,
//! fusion and effectiveness checks, and isotropy families of the resulting
//! representations.

pub mod class_function;
pub mod construct;

pub use class_function::{
    augmented_character, double_coset_count, double_coset_criterion, fixed_dim, p_effective, perm_character,
    rank_two_elementary, respects_fusion, ClassFunction,
};
pub use construct::{
    build_effective_character, isotropy_from_fixed, isotropy_of, search_block_character, sphere_dims_from_fixed,
    Construction, FixedDimTable, SylowRepresentation,
};
