use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

use super::group::{ElementSet, PermGroup};
use super::perm::Permutation;

/// Largest group whose subgroup lattice is computed by default. Subgroups are
/// stored as `u64` bitmasks over the sorted element list, so 64 is also the
/// hard maximum.
pub const DEFAULT_LATTICE_CAP: usize = 64;

/// All subgroups of a small group, as bitmasks over [`SubgroupLattice::elements`].
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    elements: ElementSet,
    // mul[i][j] = index of elements[i] * elements[j]
    mul: Vec<Vec<u8>>,
    identity: usize,
    members: Vec<u64>,
}

impl SubgroupLattice {
    pub fn elements(&self) -> &ElementSet {
        &self.elements
    }

    pub fn masks(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn group_mask(&self) -> u64 {
        full_mask(self.elements.len())
    }

    pub fn mask_elements(&self, mask: u64) -> ElementSet {
        ElementSet::from_elements(
            bits(mask)
                .map(|i| self.elements.elements()[i].clone())
                .collect(),
        )
    }

    pub fn subgroups(&self) -> Vec<ElementSet> {
        self.members
            .iter()
            .map(|&m| self.mask_elements(m))
            .collect()
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.mul[a][b] as usize
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    /// Smallest subgroup containing every element of `mask`.
    pub fn closure(&self, mask: u64) -> u64 {
        let gens: Vec<usize> = bits(mask).collect();
        let mut current = mask | (1u64 << self.identity);
        loop {
            let mut next = current;
            for a in bits(current) {
                for &g in &gens {
                    next |= 1u64 << self.mul[a][g];
                }
            }
            if next == current {
                return current;
            }
            current = next;
        }
    }

    pub fn join(&self, a: u64, b: u64) -> u64 {
        self.closure(a | b)
    }

    pub fn is_subgroup(&self, mask: u64) -> bool {
        mask & (1u64 << self.identity) != 0
            && bits(mask).all(|a| bits(mask).all(|b| mask & (1u64 << self.mul[a][b]) != 0))
    }

    /// `|xK|` in `G/K`: the least `k >= 1` with `x^k ∈ K`. Meaningful when
    /// `K` is normal.
    pub fn coset_order(&self, x: usize, k_mask: u64) -> u64 {
        let mut power = x;
        let mut k = 1;
        while k_mask & (1u64 << power) == 0 {
            power = self.mul[power][x] as usize;
            k += 1;
        }
        k
    }

    pub fn is_normal(&self, k_mask: u64) -> bool {
        let n = self.elements.len();
        let inverse: Vec<usize> = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| self.mul[a][b] as usize == self.identity)
                    .unwrap()
            })
            .collect();
        (0..n).all(|g| {
            bits(k_mask).all(|k| {
                let conj = self.mul[self.mul[inverse[g]][k] as usize][g] as usize;
                k_mask & (1u64 << conj) != 0
            })
        })
    }

    /// `ψ(G/K) · |K|`, i.e. `Σ_{x∈G} |xK|`, for a normal subgroup `K`.
    pub fn quotient_psi_times_index(&self, k_mask: u64) -> u64 {
        (0..self.elements.len())
            .map(|x| self.coset_order(x, k_mask))
            .sum()
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Every subgroup of `g`: start from the cyclic subgroups and close the family
/// under joins until nothing new appears. Every subgroup is the join of the
/// cyclic subgroups it contains, so joining with cyclic subgroups suffices.
pub fn subgroup_lattice(g: &PermGroup, order_cap: usize) -> Result<SubgroupLattice> {
    let cap = order_cap.min(DEFAULT_LATTICE_CAP.max(64)).min(64);
    let elements = g.enumerate(cap)?;
    let n = elements.len();
    if n > order_cap {
        return Err(Error::Resource {
            what: "subgroup lattice group order".into(),
            limit: order_cap as u64,
            reached: n as u64,
        });
    }
    let index: HashMap<&Permutation, usize> = elements
        .elements()
        .iter()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let mul: Vec<Vec<u8>> = elements
        .elements()
        .iter()
        .map(|a| {
            elements
                .elements()
                .iter()
                .map(|b| index[&a.then(b)] as u8)
                .collect()
        })
        .collect();
    let identity = index[&Permutation::identity(g.degree())];
    let mut lattice = SubgroupLattice {
        elements,
        mul,
        identity,
        members: Vec::new(),
    };

    let mut cyclic = BTreeSet::new();
    for x in 0..n {
        cyclic.insert(lattice.closure(1u64 << x));
    }
    let cyclic: Vec<u64> = cyclic.into_iter().collect();
    let mut found: BTreeSet<u64> = cyclic.iter().copied().collect();
    let mut frontier: Vec<u64> = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &h in &frontier {
            for &c in &cyclic {
                if h & c == c {
                    continue;
                }
                let j = lattice.join(h, c);
                if found.insert(j) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut members: Vec<u64> = found.into_iter().collect();
    members.sort_by_key(|m| (m.count_ones(), *m));
    lattice.members = members;
    Ok(lattice)
}
