use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::{Path, PathBuf};

use malachite_base::num::basic::traits::One;
use malachite_nz::natural::Natural;

use crate::arith::{prime_factors_u64, BigRat, Fraction};
use crate::error::Result;
use crate::oracle::{self, ElementSet, PermGroup, DEFAULT_ENUM_CAP};

use super::distribution::{p_group_distribution, OrderDistribution};
use super::expr::GroupExpr;

/// Settings and caches for evaluating group expressions.
///
/// Permutation leaves are resolved relative to `base_dir` and enumerated at
/// most once per context.
#[derive(Debug)]
pub struct EvalContext {
    enum_cap: usize,
    base_dir: Option<PathBuf>,
    perm_cache: RefCell<HashMap<PathBuf, (PermGroup, ElementSet)>>,
}

impl Default for EvalContext {
    fn default() -> Self {
        Self::new()
    }
}

/// One factor of a product after splitting abelian leaves by prime.
struct Component {
    primes: Vec<u64>,
    dist: OrderDistribution,
}

impl EvalContext {
    pub fn new() -> Self {
        EvalContext {
            enum_cap: DEFAULT_ENUM_CAP,
            base_dir: None,
            perm_cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn with_enum_cap(mut self, cap: usize) -> Self {
        self.enum_cap = cap;
        self
    }

    pub fn with_base_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.base_dir = Some(dir.into());
        self
    }

    pub fn enum_cap(&self) -> usize {
        self.enum_cap
    }

    pub fn resolve_path(&self, path: &Path) -> PathBuf {
        match &self.base_dir {
            Some(dir) if path.is_relative() => dir.join(path),
            _ => path.to_path_buf(),
        }
    }

    /// Generators and enumerated elements of a `perm:` leaf.
    pub fn perm_elements(&self, path: &Path) -> Result<(PermGroup, ElementSet)> {
        let full = self.resolve_path(path);
        if let Some(hit) = self.perm_cache.borrow().get(&full) {
            return Ok(hit.clone());
        }
        let group = PermGroup::from_file(&full)?;
        let elements = group.enumerate(self.enum_cap)?;
        self.perm_cache
            .borrow_mut()
            .insert(full, (group.clone(), elements.clone()));
        Ok((group, elements))
    }

    fn components(&self, expr: &GroupExpr) -> Result<Vec<Component>> {
        let mut out = Vec::new();
        for leaf in expr.leaves() {
            match leaf {
                GroupExpr::Abelian(a) => {
                    for (p, exps) in a.p_parts() {
                        out.push(Component {
                            primes: vec![p],
                            dist: p_group_distribution(p, &exps),
                        });
                    }
                }
                GroupExpr::Named(n) => out.push(Component {
                    primes: n.primes(),
                    dist: n.order_distribution(),
                }),
                GroupExpr::Perm(path) => {
                    let (_, elements) = self.perm_elements(path)?;
                    out.push(Component {
                        primes: prime_factors_u64(elements.len() as u64),
                        dist: elements.order_distribution(),
                    });
                }
                GroupExpr::Product(_) => unreachable!("leaves() flattens products"),
            }
        }
        Ok(out)
    }

    /// Groups components into clusters of pairwise non-coprime orders
    /// (connected through shared primes). Distinct clusters have coprime
    /// orders, so their average orders multiply; inside a cluster the order
    /// distributions are combined by lcm-convolution.
    fn clustered(&self, expr: &GroupExpr) -> Result<Vec<OrderDistribution>> {
        let comps = self.components(expr)?;
        let mut parent: Vec<usize> = (0..comps.len()).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while parent[r] != r {
                r = parent[r];
            }
            parent[i] = r;
            r
        }
        let mut owner: HashMap<u64, usize> = HashMap::new();
        for (i, c) in comps.iter().enumerate() {
            for p in &c.primes {
                if let Some(&j) = owner.get(p) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                } else {
                    owner.insert(*p, i);
                }
            }
        }
        let mut clusters: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..comps.len() {
            let r = find(&mut parent, i);
            clusters.entry(r).or_default().push(i);
        }
        let mut comps: Vec<Option<Component>> = comps.into_iter().map(Some).collect();
        Ok(clusters
            .into_values()
            .map(|members| {
                members
                    .into_iter()
                    .map(|i| comps[i].take().unwrap().dist)
                    .reduce(|a, b| a.lcm_convolve(&b))
                    .unwrap()
            })
            .collect())
    }

    /// `o(G)` as an unreduced fraction `ψ/|G|` multiplied over coprime
    /// clusters.
    pub(crate) fn avg_order_fraction(&self, expr: &GroupExpr) -> Result<Fraction> {
        let parts: Vec<Fraction> = self
            .clustered(expr)?
            .into_iter()
            .map(|d| Fraction::new(d.psi(), d.total().clone()))
            .collect();
        Ok(Fraction::product(&parts))
    }

    pub fn avg_order(&self, expr: &GroupExpr) -> Result<BigRat> {
        Ok(self.avg_order_fraction(expr)?.reduce())
    }

    pub fn o_ratio(&self, g: &GroupExpr, h: &GroupExpr) -> Result<BigRat> {
        Ok(self.o_ratio_fraction(g, h)?.reduce())
    }

    pub(crate) fn o_ratio_fraction(&self, g: &GroupExpr, h: &GroupExpr) -> Result<Fraction> {
        Ok(self
            .avg_order_fraction(g)?
            .div(&self.avg_order_fraction(h)?))
    }

    /// Full order distribution. The number of distinct orders grows
    /// multiplicatively with the number of primes, so this is for small
    /// expressions; [`avg_order`](Self::avg_order) scales to long products.
    pub fn order_distribution(&self, expr: &GroupExpr) -> Result<OrderDistribution> {
        Ok(self
            .clustered(expr)?
            .into_iter()
            .fold(OrderDistribution::trivial(), |acc, d| acc.lcm_convolve(&d)))
    }

    pub fn psi(&self, expr: &GroupExpr) -> Result<Natural> {
        Ok(self.order_distribution(expr)?.psi())
    }

    pub fn order(&self, expr: &GroupExpr) -> Result<Natural> {
        let mut order = Natural::ONE;
        for leaf in expr.leaves() {
            order *= match leaf {
                GroupExpr::Abelian(a) => a.order(),
                GroupExpr::Named(n) => n.order(),
                GroupExpr::Perm(path) => Natural::from(self.perm_elements(path)?.1.len() as u64),
                GroupExpr::Product(_) => unreachable!(),
            };
        }
        Ok(order)
    }

    /// Primes dividing the group order.
    pub fn primes(&self, expr: &GroupExpr) -> Result<BTreeSet<u64>> {
        let mut out = BTreeSet::new();
        for c in self.components(expr)? {
            out.extend(c.primes);
        }
        Ok(out)
    }

    /// Whether the factors of a product have pairwise coprime orders, the
    /// condition under which average orders multiply.
    pub fn pairwise_coprime(&self, factors: &[GroupExpr]) -> Result<bool> {
        let mut seen = BTreeSet::new();
        for f in factors {
            for p in self.primes(f)? {
                if !seen.insert(p) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Direct products of nilpotent groups are nilpotent; abelian and
    /// registry leaves are nilpotent by construction, permutation leaves are
    /// checked by enumeration.
    pub fn is_nilpotent(&self, expr: &GroupExpr) -> Result<bool> {
        for leaf in expr.leaves() {
            if let GroupExpr::Perm(path) = leaf {
                let (_, elements) = self.perm_elements(path)?;
                if !oracle::is_nilpotent_elements(&elements) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_abelian(&self, expr: &GroupExpr) -> Result<bool> {
        for leaf in expr.leaves() {
            let ok = match leaf {
                GroupExpr::Abelian(_) => true,
                GroupExpr::Named(n) => n.is_abelian(),
                GroupExpr::Perm(path) => self.perm_elements(path)?.1.is_abelian(),
                GroupExpr::Product(_) => unreachable!(),
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `o(G)` with a default context.
pub fn avg_order(expr: &GroupExpr) -> Result<BigRat> {
    EvalContext::new().avg_order(expr)
}

/// `o(G)/o(H)` with a default context.
pub fn o_ratio(g: &GroupExpr, h: &GroupExpr) -> Result<BigRat> {
    EvalContext::new().o_ratio(g, h)
}
