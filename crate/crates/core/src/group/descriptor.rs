use std::collections::BTreeMap;
use std::fmt;

use malachite_base::num::arithmetic::traits::Pow;
use malachite_nz::natural::Natural;

use crate::arith::prime_power_u64;
use crate::error::{Error, Result};

/// A cyclic factor `C(p^e)` with `e >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

impl PrimePower {
    pub fn value(&self) -> Natural {
        Natural::from(self.prime).pow(self.exponent as u64)
    }
}

/// Finite abelian group in elementary-divisor form: a multiset of cyclic
/// prime-power factors, kept sorted by `(prime, exponent)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianDescriptor {
    factors: Vec<PrimePower>,
}

impl AbelianDescriptor {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Builds a descriptor; panics if a factor has exponent 0 or a
    /// non-prime base (use [`AbelianDescriptor::cyclic`] for checked input).
    pub fn new(mut factors: Vec<PrimePower>) -> Self {
        for f in &factors {
            assert!(f.exponent >= 1, "exponent must be positive");
            assert!(
                crate::arith::is_prime_u64(f.prime),
                "{} is not prime",
                f.prime
            );
        }
        factors.sort_unstable();
        AbelianDescriptor { factors }
    }

    /// `C(n)` for a prime power `n >= 2`.
    pub fn cyclic(n: u64) -> Result<Self> {
        let (prime, exponent) = prime_power_u64(n).ok_or_else(|| {
            Error::InvalidArgument(format!("C({n}): {n} is not a prime power >= 2"))
        })?;
        Ok(AbelianDescriptor {
            factors: vec![PrimePower { prime, exponent }],
        })
    }

    /// `C(p^e)^rank`.
    pub fn homocyclic(prime: u64, exponent: u32, rank: usize) -> Self {
        Self::new(vec![PrimePower { prime, exponent }; rank])
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Direct product with another descriptor.
    /// Direct product of many descriptors, sorted once.
    pub fn merge_all<'a>(parts: impl IntoIterator<Item = &'a AbelianDescriptor>) -> Self {
        let mut factors: Vec<PrimePower> = parts
            .into_iter()
            .flat_map(|a| a.factors.iter().copied())
            .collect();
        factors.sort_unstable();
        AbelianDescriptor { factors }
    }

    pub fn merged(&self, other: &AbelianDescriptor) -> AbelianDescriptor {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        factors.sort_unstable();
        AbelianDescriptor { factors }
    }

    pub fn order(&self) -> Natural {
        let powers: Vec<Natural> = self
            .p_parts()
            .into_iter()
            .map(|(p, exps)| {
                let total: u64 = exps.iter().map(|&e| e as u64).sum();
                Natural::from(p).pow(total)
            })
            .collect();
        crate::arith::product_tree(&powers)
    }

    /// Distinct primes dividing the order, ascending.
    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.factors.iter().map(|f| f.prime).collect();
        ps.dedup();
        ps
    }

    /// Exponents of the `p`-primary component, in descending order (the
    /// partition describing the Sylow `p`-subgroup's type).
    pub fn p_part(&self, p: u64) -> Vec<u32> {
        let mut exps: Vec<u32> = self
            .factors
            .iter()
            .filter(|f| f.prime == p)
            .map(|f| f.exponent)
            .collect();
        exps.sort_unstable_by(|a, b| b.cmp(a));
        exps
    }

    pub fn p_parts(&self) -> BTreeMap<u64, Vec<u32>> {
        let mut parts: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for f in &self.factors {
            parts.entry(f.prime).or_default().push(f.exponent);
        }
        for exps in parts.values_mut() {
            exps.sort_unstable_by(|a, b| b.cmp(a));
        }
        parts
    }

    /// Whether `other` is isomorphic to a subgroup of `self`.
    ///
    /// An abelian `p`-group of type `λ` has a subgroup of type `μ` exactly
    /// when `μ_i <= λ_i` for every part (both sorted descending), so the test
    /// is a per-prime partition containment.
    pub fn contains_subgroup_type(&self, other: &AbelianDescriptor) -> bool {
        let mine = self.p_parts();
        other.p_parts().iter().all(|(p, mu)| match mine.get(p) {
            None => false,
            Some(lambda) => mu.len() <= lambda.len() && mu.iter().zip(lambda).all(|(m, l)| m <= l),
        })
    }

    /// Factorwise quotient by the subgroup whose `i`-th cyclic factor has
    /// exponent `sub_exponents[i]` (aligned with [`factors`](Self::factors)).
    pub fn factorwise_quotient(&self, sub_exponents: &[u32]) -> Result<AbelianDescriptor> {
        if sub_exponents.len() != self.factors.len() {
            return Err(Error::InvalidArgument(
                "exponent list length mismatch".into(),
            ));
        }
        let mut out = Vec::new();
        for (f, &k) in self.factors.iter().zip(sub_exponents) {
            if k > f.exponent {
                return Err(Error::InvalidArgument(format!(
                    "subgroup exponent {k} exceeds factor C({})",
                    f.value()
                )));
            }
            if f.exponent > k {
                out.push(PrimePower {
                    prime: f.prime,
                    exponent: f.exponent - k,
                });
            }
        }
        Ok(AbelianDescriptor::new(out))
    }
}

/// Partitions of `n` into parts of size at most `max`, parts descending.
fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl AbelianDescriptor {
    /// Every abelian group of order at most `n`, one per isomorphism type,
    /// ordered by group order and then by factor list.
    pub fn all_up_to_order(n: u64) -> Vec<AbelianDescriptor> {
        let mut out = Vec::new();
        for order in 1..=n {
            let mut per_order = vec![AbelianDescriptor::trivial()];
            let mut rest = order;
            for p in crate::arith::prime_factors_u64(order) {
                let mut a = 0;
                while rest % p == 0 {
                    rest /= p;
                    a += 1;
                }
                let mut next = Vec::new();
                for g in &per_order {
                    for lambda in partitions(a, a) {
                        let extra = AbelianDescriptor::new(
                            lambda
                                .iter()
                                .map(|&exponent| PrimePower { prime: p, exponent })
                                .collect(),
                        );
                        next.push(g.merged(&extra));
                    }
                }
                per_order = next;
            }
            out.extend(per_order);
        }
        out
    }
}

impl fmt::Display for AbelianDescriptor {
    /// `C(2)^2 x C(9)`; the trivial group prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.factors.len() {
            let run = self.factors[i..]
                .iter()
                .take_while(|x| **x == self.factors[i])
                .count();
            if !first {
                f.write_str(" x ")?;
            }
            first = false;
            write!(f, "C({})", self.factors[i].value())?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}
