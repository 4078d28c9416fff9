//! Rank profiles, rank one families, `Qd(p)` involvement and the group
//! theoretic existence conditions.

pub mod family;
pub mod qd;
pub mod rank;
pub mod theorem;

pub use family::Family;
pub use qd::{involves_qd, qd_order, QdWitness};
pub use rank::{is_p_subgroup_class, p_rank, rank_one_family, rank_profile, weyl_order, weyl_rank, RankProfile};
pub use theorem::{
    check_necessary, check_theorem_a, weyl_rank_conditions, ConditionEntry, ConditionReport, QdVerdict, TheoremAReport,
};
