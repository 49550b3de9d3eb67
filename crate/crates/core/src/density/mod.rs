//! Constructions of average-order ratios.
//!
//! The terms `r_n = o(C(p_n)^m) / o(C(p_n))` exceed 1, tend to 1, and their
//! product diverges, so a greedy scan picks finite subproducts approaching
//! any target `>= 1` from below. Inverting gives targets in `(0, 1]` with
//! abelian groups; multiplying by a nonabelian base pair with ratio below 1
//! gives nilpotent nonabelian witnesses for targets in `(rho0, 1)`.

mod construct;
mod diagnostics;
mod greedy;
mod kmz;
mod sequence;

pub(crate) use construct::perm_subgroup;
pub use construct::{
    construct_ge1, construct_le1_abelian, construct_sub_unit_nilpotent, dih_two_ratio,
    prime_indices, BasePair, ConstructOptions,
};
pub use diagnostics::{seq_diagnostics, seq_diagnostics_with_cap, SeqRow};
pub(crate) use greedy::greedy_indices;
pub use greedy::{greedy_subproduct, GreedyResult, DEFAULT_MAX_TERMS};
pub use kmz::{kmz_bound, kmz_bound_plan, kmz_plan_at, KmzPlan, KMZ_FIRST_INDEX};
pub use sequence::{ratio_fraction, RatioTerm, RatioTermSequence};
