//! Super class functions, their structural predicates, periods and the
//! alignment of per-prime dimension functions.

pub mod align;
pub mod period;
pub mod superclass;

pub use align::{align, m_g, verify_alignment, AlignConstraints, AlignmentPlan, ChainReading, PeriodConstraint};
pub use period::q_period_multiple;
pub use superclass::{
    components_at_value, level_components, ClassValue, ClosureViolation, LevelComponent, SuperClassFunction,
};
