use std::collections::BTreeMap;
use std::fmt;

use malachite_base::num::arithmetic::traits::Pow;
use malachite_nz::natural::Natural;

use crate::error::{Error, Result};
use crate::oracle::{PermGroup, Permutation};

use super::descriptor::AbelianDescriptor;
use super::distribution::OrderDistribution;
use super::expr::GroupExpr;

/// Largest `k` accepted for `DihTwo(k)`: the group order `2^(k+1)` still fits
/// comfortably in the distribution arithmetic and the display stays short.
pub const MAX_DIH_TWO: u32 = 60;

/// Named nonabelian (or aliased) 2-groups with stored order distributions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NamedGroup {
    /// Dihedral group of order 8.
    D4,
    /// Quaternion group of order 8.
    Q8,
    /// Cyclic group of order 4, the same group as `C(4)`.
    C4,
    /// Dihedral group of order `2^(k+1)`, `k >= 2`.
    DihTwo(u32),
}

impl NamedGroup {
    pub fn parse_key(key: &str) -> Result<Self> {
        match key {
            "D4" => return Ok(NamedGroup::D4),
            "Q8" => return Ok(NamedGroup::Q8),
            "C4" => return Ok(NamedGroup::C4),
            _ => {}
        }
        let arg = key
            .strip_prefix("DihTwo(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::UnknownGroup(key.to_string()))?;
        let k: u32 = arg
            .trim()
            .parse()
            .map_err(|_| Error::UnknownGroup(key.to_string()))?;
        if !(2..=MAX_DIH_TWO).contains(&k) {
            return Err(Error::InvalidArgument(format!(
                "DihTwo(k) needs 2 <= k <= {MAX_DIH_TWO}, got {k}"
            )));
        }
        Ok(NamedGroup::DihTwo(k))
    }

    pub fn order(&self) -> Natural {
        Natural::from(2u32).pow(self.log2_order() as u64)
    }

    fn log2_order(&self) -> u32 {
        match self {
            NamedGroup::D4 | NamedGroup::Q8 => 3,
            NamedGroup::C4 => 2,
            NamedGroup::DihTwo(k) => k + 1,
        }
    }

    /// Every registry group is a 2-group.
    pub fn primes(&self) -> Vec<u64> {
        vec![2]
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self, NamedGroup::C4)
    }

    pub fn order_distribution(&self) -> OrderDistribution {
        match self {
            NamedGroup::D4 => dihedral_two(2),
            NamedGroup::Q8 => OrderDistribution::from_pairs(&[(1, 1), (2, 1), (4, 6)]).unwrap(),
            NamedGroup::C4 => OrderDistribution::from_pairs(&[(1, 1), (2, 1), (4, 2)]).unwrap(),
            NamedGroup::DihTwo(k) => dihedral_two(*k),
        }
    }

    /// A faithful permutation representation.
    pub fn perm_group(&self) -> PermGroup {
        let gens: Vec<Permutation> = match self {
            NamedGroup::D4 => return NamedGroup::DihTwo(2).perm_group(),
            NamedGroup::Q8 => ["(1 3 2 4)(5 7 6 8)", "(1 5 2 6)(3 8 4 7)"]
                .iter()
                .map(|s| Permutation::from_cycles(s, None).unwrap())
                .collect(),
            NamedGroup::C4 => vec![Permutation::from_cycles("(1 2 3 4)", None).unwrap()],
            NamedGroup::DihTwo(k) => {
                let n = 1u32 << k;
                let rotation = (0..n).map(|i| (i + 1) % n).collect();
                let reflection = (0..n).map(|i| (n - i) % n).collect();
                vec![
                    Permutation::from_images(rotation).unwrap(),
                    Permutation::from_images(reflection).unwrap(),
                ]
            }
        };
        PermGroup::new(gens)
    }

    /// Isomorphism types of all subgroups, as group expressions. A factor
    /// `h` of a certificate is accepted as a subgroup of this group exactly
    /// when its canonical form appears here.
    pub fn known_subgroups(&self) -> Vec<GroupExpr> {
        let cyclic =
            |e: u32| -> GroupExpr { GroupExpr::Abelian(AbelianDescriptor::homocyclic(2, e, 1)) };
        let mut out = vec![GroupExpr::trivial()];
        match self {
            NamedGroup::C4 => {
                out.extend([cyclic(1), cyclic(2), GroupExpr::Named(NamedGroup::C4)]);
            }
            NamedGroup::Q8 => {
                out.extend([cyclic(1), cyclic(2), GroupExpr::Named(NamedGroup::Q8)]);
            }
            NamedGroup::D4 | NamedGroup::DihTwo(_) => {
                let k = match self {
                    NamedGroup::DihTwo(k) => *k,
                    _ => 2,
                };
                out.extend((1..=k).map(cyclic));
                out.push(GroupExpr::Abelian(AbelianDescriptor::homocyclic(2, 1, 2)));
                out.push(GroupExpr::Named(NamedGroup::D4));
                out.extend((2..=k).map(|j| GroupExpr::Named(NamedGroup::DihTwo(j))));
            }
        }
        out
    }

    pub fn has_subgroup(&self, h: &GroupExpr) -> bool {
        let canonical = canonical_name(h);
        self.known_subgroups()
            .iter()
            .any(|s| canonical_name(s) == canonical)
    }
}

/// Spelling that identifies aliases: `C4` is `C(4)` and `D4` is `DihTwo(2)`.
fn canonical_name(g: &GroupExpr) -> String {
    match g {
        GroupExpr::Named(NamedGroup::C4) => {
            GroupExpr::Abelian(AbelianDescriptor::homocyclic(2, 2, 1)).to_string()
        }
        GroupExpr::Named(NamedGroup::DihTwo(2)) => NamedGroup::D4.to_string(),
        other => other.to_string(),
    }
}

/// Dihedral group of order `2^(k+1)`: the rotation subgroup `C(2^k)` plus
/// `2^k` reflections of order 2.
fn dihedral_two(k: u32) -> OrderDistribution {
    let mut counts: BTreeMap<Natural, Natural> = BTreeMap::new();
    counts.insert(Natural::from(1u32), Natural::from(1u32));
    for j in 1..=k {
        counts.insert(
            Natural::from(2u32).pow(j as u64),
            Natural::from(2u32).pow(j as u64 - 1),
        );
    }
    *counts.get_mut(&Natural::from(2u32)).unwrap() += Natural::from(2u32).pow(k as u64);
    OrderDistribution::from_counts(counts).unwrap()
}

impl fmt::Display for NamedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGroup::D4 => f.write_str("D4"),
            NamedGroup::Q8 => f.write_str("Q8"),
            NamedGroup::C4 => f.write_str("C4"),
            NamedGroup::DihTwo(k) => write!(f, "DihTwo({k})"),
        }
    }
}
