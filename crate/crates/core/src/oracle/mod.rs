//! Brute-force ground truth for small permutation groups.
//!
//! Everything here works by enumerating elements, so it is slow and capped,
//! but it shares no code with the closed forms in [`crate::group`] and is
//! used to check them.

mod group;
mod lattice;
mod perm;

pub(crate) use group::is_nilpotent_elements;
pub use group::{
    center, nilpotency_check, order_distribution_bruteforce, ElementSet, PermGroup,
    DEFAULT_ENUM_CAP,
};
pub use lattice::{subgroup_lattice, SubgroupLattice, DEFAULT_LATTICE_CAP};
pub use perm::{element_order, Permutation};
