//! Element-order statistics of finite groups, and certified constructions of
//! average-order ratios.
//!
//! For a finite group `G`, `ψ(G)` is the sum of the orders of its elements and
//! `o(G) = ψ(G)/|G|` is its average order. This crate computes both exactly
//! for abelian groups, a registry of small nilpotent 2-groups, and permutation
//! groups given by generators, and it builds explicit pairs `H ≤ G` of
//! nilpotent groups whose ratio `o(G)/o(H)` approximates a requested rational
//! target from a known side. Every construction is emitted as a
//! [`Certificate`](certify::Certificate) that [`verify`](certify::verify)
//! re-checks from first principles.
//!
//! Module map:
//!
//! - [`arith`]: exact rationals ([`BigRat`]) and the prime stream.
//! - [`group`]: abelian descriptors, order distributions, group expressions,
//!   the named-group registry and the `ψ`/`o` calculators.
//! - [`oracle`]: brute-force permutation-group enumeration used as ground truth.
//! - [`density`]: the ratio-term sequence, the greedy subproduct search and the
//!   three constructors.
//! - [`certify`]: certificate model, canonical JSON and the verifier.

pub mod arith;
pub mod certify;
pub mod density;
mod error;
pub mod group;
pub mod oracle;

pub use arith::{nth_prime, BigRat, PrimeStream, DEFAULT_PRIME_CAP};
pub use certify::{verify, verify_with, Certificate, Mode, Verdict, VerdictStatus};
pub use density::{
    construct_ge1, construct_le1_abelian, construct_sub_unit_nilpotent, greedy_subproduct,
    kmz_bound_plan, seq_diagnostics, BasePair, ConstructOptions, KmzPlan, RatioTermSequence,
};
pub use error::{Error, Result};
pub use group::{
    abelian_order_distribution, avg_order, cyclic_psi_closed, lcm_convolve, o_ratio, psi,
    AbelianDescriptor, EvalContext, GroupExpr, NamedGroup, OrderDistribution,
};

pub use malachite_nz::natural::Natural;
