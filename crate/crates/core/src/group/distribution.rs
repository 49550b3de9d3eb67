use std::collections::BTreeMap;

use malachite_base::num::arithmetic::traits::{DivisibleBy, Lcm, Pow};
use malachite_base::num::basic::traits::{One, Zero};
use malachite_nz::natural::Natural;

use crate::arith::BigRat;
use crate::error::{Error, Result};

use super::descriptor::AbelianDescriptor;

/// Histogram of element orders: `order -> number of elements of that order`.
///
/// Invariants (checked by [`OrderDistribution::from_counts`]): exactly one
/// element of order 1, counts sum to the group order, and every order
/// divides the group order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderDistribution {
    counts: BTreeMap<Natural, Natural>,
    total: Natural,
}

impl OrderDistribution {
    pub fn trivial() -> Self {
        let mut counts = BTreeMap::new();
        counts.insert(Natural::ONE, Natural::ONE);
        OrderDistribution {
            counts,
            total: Natural::ONE,
        }
    }

    pub fn from_counts(counts: BTreeMap<Natural, Natural>) -> Result<Self> {
        if counts.get(&Natural::ONE) != Some(&Natural::ONE) {
            return Err(Error::InvalidArgument(
                "order distribution must have exactly one element of order 1".into(),
            ));
        }
        let total: Natural = counts.values().sum();
        for (d, c) in &counts {
            if *c == 0u32 {
                return Err(Error::InvalidArgument(format!("zero count at order {d}")));
            }
            if !(&total).divisible_by(d) {
                return Err(Error::InvalidArgument(format!(
                    "order {d} does not divide the group order {total}"
                )));
            }
        }
        Ok(OrderDistribution { counts, total })
    }

    /// Convenience for small literal tables, e.g. `&[(1, 1), (2, 3)]`.
    pub fn from_pairs(pairs: &[(u64, u64)]) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for &(d, c) in pairs {
            *counts.entry(Natural::from(d)).or_insert(Natural::ZERO) += Natural::from(c);
        }
        Self::from_counts(counts)
    }

    pub fn total(&self) -> &Natural {
        &self.total
    }

    pub fn count(&self, order: &Natural) -> Natural {
        self.counts.get(order).cloned().unwrap_or(Natural::ZERO)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Natural, &Natural)> {
        self.counts.iter()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> Natural {
        self.counts.keys().fold(Natural::ONE, |acc, d| acc.lcm(d))
    }

    pub fn psi(&self) -> Natural {
        self.counts.iter().map(|(d, c)| d * c).sum()
    }

    pub fn avg_order(&self) -> BigRat {
        BigRat::from_naturals(self.psi(), self.total.clone())
    }

    /// Distribution of the direct product: a pair of elements of orders
    /// `d1`, `d2` has order `lcm(d1, d2)`.
    pub fn lcm_convolve(&self, other: &OrderDistribution) -> OrderDistribution {
        let mut counts: BTreeMap<Natural, Natural> = BTreeMap::new();
        for (d1, c1) in &self.counts {
            for (d2, c2) in &other.counts {
                *counts.entry(d1.lcm(d2)).or_insert(Natural::ZERO) += c1 * c2;
            }
        }
        OrderDistribution {
            counts,
            total: &self.total * &other.total,
        }
    }

    /// Small tables as `(order, count)` pairs; panics on values beyond `u64`.
    pub fn to_pairs(&self) -> Vec<(u64, u64)> {
        self.counts
            .iter()
            .map(|(d, c)| (u64::try_from(d).unwrap(), u64::try_from(c).unwrap()))
            .collect()
    }
}

/// Distribution of an abelian `p`-group with cyclic factors `C(p^e_i)`.
///
/// The elements of order dividing `p^j` form a subgroup of size
/// `p^(Σ min(e_i, j))`; exact-order counts are successive differences.
pub fn p_group_distribution(p: u64, exponents: &[u32]) -> OrderDistribution {
    let top = exponents.iter().copied().max().unwrap_or(0);
    let prime = Natural::from(p);
    let mut counts = BTreeMap::new();
    let mut below = Natural::ZERO;
    for j in 0..=top {
        let log: u64 = exponents.iter().map(|&e| e.min(j) as u64).sum();
        let upto = (&prime).pow(log);
        counts.insert((&prime).pow(j as u64), &upto - &below);
        below = upto;
    }
    OrderDistribution {
        counts,
        total: below,
    }
}

/// Exact order distribution of an abelian group: per-prime counting, then the
/// coprime combination of the primary components.
///
/// The number of distinct orders is the product over primes of (largest
/// exponent + 1), so this is meant for groups with few prime divisors; use
/// [`avg_order`](super::avg_order) for long coprime products.
pub fn abelian_order_distribution(desc: &AbelianDescriptor) -> OrderDistribution {
    desc.p_parts()
        .iter()
        .map(|(&p, exps)| p_group_distribution(p, exps))
        .fold(OrderDistribution::trivial(), |acc, d| acc.lcm_convolve(&d))
}

pub fn lcm_convolve(d1: &OrderDistribution, d2: &OrderDistribution) -> OrderDistribution {
    d1.lcm_convolve(d2)
}

pub fn psi(dist: &OrderDistribution) -> Natural {
    dist.psi()
}

/// `ψ(C(p^k)) = (p^(2k+1) + 1) / (p + 1)`.
pub fn cyclic_psi_closed(p: u64, k: u32) -> Natural {
    let p = Natural::from(p);
    ((&p).pow(2 * k as u64 + 1) + Natural::ONE) / (p + Natural::ONE)
}
