//! Group descriptors and exact `ψ`/`o` evaluation.

mod descriptor;
mod distribution;
mod eval;
mod expr;
mod registry;

pub use descriptor::{AbelianDescriptor, PrimePower};
pub use distribution::{
    abelian_order_distribution, cyclic_psi_closed, lcm_convolve, p_group_distribution, psi,
    OrderDistribution,
};
pub use eval::{avg_order, o_ratio, EvalContext};
pub use expr::GroupExpr;
pub use registry::{NamedGroup, MAX_DIH_TWO};
