//! Permutation groups with enumerated elements, subgroup lattices and
//! isomorphism tests.

pub mod builtin;
pub mod group;
pub mod iso;
pub mod lattice;
pub mod parse;
pub mod perm;
pub mod subgroup;

pub use builtin::builtin;
pub use group::{Group, DEFAULT_ORDER_BOUND};
pub use iso::{isomorphic, isomorphism};
pub use lattice::{is_power_of, is_prime, prime_divisors, subgroup_lattice, Lattice, SubgroupClass};
pub use parse::{group_from_text, group_to_text, parse_group_text};
pub use perm::Perm;
pub use subgroup::{CosetTable, QuotientMap, Subgroup};
