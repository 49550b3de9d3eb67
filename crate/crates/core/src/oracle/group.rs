use std::collections::{BTreeMap, HashSet, VecDeque};
use std::path::Path;

use malachite_nz::natural::Natural;

use crate::arith::prime_factors_u64;
use crate::error::{Error, Result};
use crate::group::OrderDistribution;

use super::perm::Permutation;

/// Default cap on the number of elements a brute-force enumeration may visit.
pub const DEFAULT_ENUM_CAP: usize = 1_000_000;

/// A permutation group given by generators, all padded to a common degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
}

impl PermGroup {
    pub fn new(generators: Vec<Permutation>) -> Self {
        let degree = generators
            .iter()
            .map(Permutation::degree)
            .max()
            .unwrap_or(0);
        let generators = generators.iter().map(|g| g.extended(degree)).collect();
        PermGroup { degree, generators }
    }

    /// Parses a generator file: one permutation per line in disjoint-cycle
    /// notation; blank lines and lines starting with `#` are skipped.
    pub fn parse_generators(text: &str) -> Result<Self> {
        let mut gens = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let p = Permutation::from_cycles(line, None)
                .map_err(|e| Error::parse(format!("line {}", lineno + 1), e.to_string()))?;
            gens.push(p);
        }
        Ok(PermGroup::new(gens))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse_generators(&text)
    }

    /// `C(n_1) x ... x C(n_k)` as disjoint cycles of lengths `n_i`.
    pub fn cyclic_product(moduli: &[u64]) -> Self {
        let mut start = 0u32;
        let mut gens = Vec::new();
        let total: u64 = moduli.iter().sum();
        for &n in moduli {
            let n = n as u32;
            let mut images: Vec<u32> = (0..total as u32).collect();
            for i in 0..n {
                images[(start + i) as usize] = start + (i + 1) % n;
            }
            gens.push(Permutation::from_images(images).expect("a cycle is a bijection"));
            start += n;
        }
        PermGroup::new(gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Breadth-first closure of the generators under composition.
    pub fn enumerate(&self, cap: usize) -> Result<ElementSet> {
        let identity = Permutation::identity(self.degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(identity.clone());
        queue.push_back(identity);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = x.then(g);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(Error::Resource {
                            what: "permutation group enumeration".into(),
                            limit: cap as u64,
                            reached: seen.len() as u64,
                        });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort_unstable();
        Ok(ElementSet { elements })
    }
}

/// A set of permutations of a common degree, sorted by image array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementSet {
    elements: Vec<Permutation>,
}

impl ElementSet {
    pub fn from_elements(mut elements: Vec<Permutation>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        ElementSet { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn order_distribution(&self) -> OrderDistribution {
        let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
        for x in &self.elements {
            *hist.entry(x.order()).or_insert(0) += 1;
        }
        let counts = hist
            .into_iter()
            .map(|(d, c)| (Natural::from(d), Natural::from(c)))
            .collect();
        OrderDistribution::from_counts(counts)
            .expect("histogram of a finite group satisfies the distribution invariants")
    }

    pub fn is_abelian(&self) -> bool {
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| a.then(b) == b.then(a)))
    }
}

pub fn order_distribution_bruteforce(g: &PermGroup, cap: usize) -> Result<OrderDistribution> {
    Ok(g.enumerate(cap)?.order_distribution())
}

/// Elements commuting with every generator.
pub fn center(g: &PermGroup, cap: usize) -> Result<ElementSet> {
    let all = g.enumerate(cap)?;
    let central = all
        .elements
        .into_iter()
        .filter(|x| g.generators.iter().all(|s| x.then(s) == s.then(x)))
        .collect();
    Ok(ElementSet { elements: central })
}

/// Nilpotency test: for every prime `p` dividing `|G|`, the elements of
/// `p`-power order must form a subgroup.
///
/// Counting suffices: every Sylow `p`-subgroup lies inside the set of
/// `p`-elements, so that set has exactly `|G|_p` members iff it *is* the
/// unique (hence normal, closed) Sylow subgroup, and a finite group whose
/// Sylow subgroups are all normal is their direct product.
pub fn nilpotency_check(g: &PermGroup, cap: usize) -> Result<bool> {
    let all = g.enumerate(cap)?;
    Ok(is_nilpotent_elements(&all))
}

pub(crate) fn is_nilpotent_elements(all: &ElementSet) -> bool {
    let n = all.len() as u64;
    prime_factors_u64(n).into_iter().all(|p| {
        let mut sylow_order = 1u64;
        while n % (sylow_order * p) == 0 {
            sylow_order *= p;
        }
        let p_elements = all
            .elements
            .iter()
            .filter(|x| {
                let mut o = x.order();
                while o % p == 0 {
                    o /= p;
                }
                o == 1
            })
            .count() as u64;
        p_elements == sylow_order
    })
}
