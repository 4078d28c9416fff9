//! Exact integer matrices, Smith normal form with transforms, and lattice
//! operations on column spans.

pub mod matrix;
pub mod snf;

pub use matrix::IntMatrix;
pub use snf::{
    contains_lattice, image_basis, intersect_lattices, kernel_basis, rank, same_lattice, smith_normal_form, solve, Snf,
};
