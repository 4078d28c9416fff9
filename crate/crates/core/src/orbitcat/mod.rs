//! Finite free chain complexes over the orbit category: evaluation at
//! subgroups, homology by Smith normal form, dimension functions, sphere and
//! orientation predicates, restriction images, splitting and extension.

pub mod category;
pub mod complex;
pub mod gcw;
pub mod ops;
pub mod zcomplex;

pub use category::{double_coset_reps, is_morphism, locate_double_coset, OrbitCategory};
pub use complex::{
    ActionEntry, BoundaryTerm, Cell, ClassHomology, ClassVerdicts, DegreeEntry, Evaluation, HomologyTable,
    OCChainComplex,
};
pub use gcw::{from_gcw, parse_gcw, to_gcw, CellSpec, GcwFile, GroupSpec, TermSpec};
pub use ops::{
    extension_functor, join, pushout, pushout_evaluation, sub_complex, CellMap, GroupRingComplex, GroupRingMatrix,
};
pub use zcomplex::{induced_on_free, Coefficients, DegreeHomology, ZComplex};
