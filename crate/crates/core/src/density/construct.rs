use std::collections::BTreeSet;
use std::path::PathBuf;

use crate::arith::{is_prime_u64, BigRat, PrimeStream, DEFAULT_PRIME_CAP};
use crate::certify::{Certificate, Mode, Trace, WitnessEntry, CERT_VERSION};
use crate::error::{Error, Result};
use crate::group::{
    cyclic_psi_closed, AbelianDescriptor, EvalContext, GroupExpr, NamedGroup, PrimePower,
    MAX_DIH_TWO,
};
use crate::oracle::Permutation;

use super::greedy::{greedy_subproduct, GreedyResult, DEFAULT_MAX_TERMS};
use super::kmz::kmz_bound_plan;
use super::sequence::RatioTermSequence;

/// Parameters shared by the three constructors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructOptions {
    pub eps: BigRat,
    /// Rank of the elementary abelian factors `C(p)^m`.
    pub m: u32,
    /// Prime indices the construction must avoid.
    pub excluded: BTreeSet<u64>,
    pub max_terms: u64,
    pub prime_cap: u64,
}

impl ConstructOptions {
    pub fn new(eps: BigRat) -> Self {
        ConstructOptions {
            eps,
            m: 2,
            excluded: BTreeSet::new(),
            max_terms: DEFAULT_MAX_TERMS,
            prime_cap: DEFAULT_PRIME_CAP,
        }
    }

    pub fn with_m(mut self, m: u32) -> Self {
        self.m = m;
        self
    }

    pub fn with_excluded(mut self, excluded: impl IntoIterator<Item = u64>) -> Self {
        self.excluded = excluded.into_iter().collect();
        self
    }

    pub fn with_max_terms(mut self, max_terms: u64) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn with_prime_cap(mut self, prime_cap: u64) -> Self {
        self.prime_cap = prime_cap;
        self
    }

    fn run_greedy(&self, target: &BigRat, excluded: &BTreeSet<u64>) -> Result<GreedyResult> {
        let mut seq = RatioTermSequence::with_prime_cap(self.m, excluded.clone(), self.prime_cap)?;
        greedy_subproduct(target, &mut seq, &self.eps, self.max_terms)
    }
}

/// A nilpotent pair `h0 <= g0` with `o(g0)/o(h0) < 1`, the starting point of
/// sub-unit constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePair {
    pub key: String,
    pub g0: GroupExpr,
    pub h0: GroupExpr,
    pub rho0: BigRat,
    pub primes: BTreeSet<u64>,
}

impl BasePair {
    /// `D4C4`: the dihedral group of order 8 over its cyclic subgroup of
    /// order 4, ratio `19/22`.
    pub fn d4c4() -> Self {
        let g0 = GroupExpr::Named(NamedGroup::D4);
        let h0 = GroupExpr::Named(NamedGroup::C4);
        Self::from_registry("D4C4", g0, h0)
    }

    /// `DihTwo(k)` over its rotation subgroup `C(2^k)`. The ratio
    /// `1/2 + 2^k / ψ(C(2^k))` decreases towards `1/2` as `k` grows.
    pub fn dih_two(k: u32) -> Result<Self> {
        let g = NamedGroup::parse_key(&format!("DihTwo({k})"))?;
        let h0 = GroupExpr::Abelian(AbelianDescriptor::new(vec![PrimePower {
            prime: 2,
            exponent: k,
        }]));
        Ok(Self::from_registry(&g.to_string(), GroupExpr::Named(g), h0))
    }

    fn from_registry(key: &str, g0: GroupExpr, h0: GroupExpr) -> Self {
        let ctx = EvalContext::new();
        let rho0 = ctx
            .o_ratio(&g0, &h0)
            .expect("registry groups always evaluate");
        BasePair {
            key: key.to_string(),
            primes: ctx.primes(&g0).expect("registry groups always evaluate"),
            g0,
            h0,
            rho0,
        }
    }

    /// Built-in pair by key: `D4C4` or `DihTwo(k)`.
    pub fn builtin(key: &str) -> Result<Self> {
        if key == "D4C4" {
            return Ok(Self::d4c4());
        }
        match NamedGroup::parse_key(key) {
            Ok(NamedGroup::DihTwo(k)) => Self::dih_two(k),
            _ => Err(Error::UnknownGroup(format!(
                "{key} (built-in base pairs are D4C4 and DihTwo(k))"
            ))),
        }
    }

    /// Built-in pair with the largest ratio not above `a`: `D4C4` when
    /// `a >= 19/22`, otherwise the smallest `k` with ratio of `DihTwo(k)`
    /// at most `a`.
    pub fn auto_for(a: &BigRat) -> Option<Self> {
        (2..=MAX_DIH_TWO)
            .find(|&k| dih_two_ratio(k) <= *a)
            .map(|k| {
                if k == 2 {
                    Self::d4c4()
                } else {
                    Self::dih_two(k).unwrap()
                }
            })
    }

    /// A user-supplied pair given by two generator files. The generators of
    /// `h` must lie in the group generated by `g`, `g` must be nilpotent and
    /// the ratio must be below 1.
    pub fn from_perm_files(g: PathBuf, h: PathBuf, ctx: &EvalContext) -> Result<Self> {
        let g0 = GroupExpr::Perm(g);
        let h0 = GroupExpr::Perm(h);
        if !perm_subgroup(ctx, &g0, &h0)? {
            return Err(Error::InvalidArgument(format!(
                "the generators of {h0} do not all lie in {g0}"
            )));
        }
        if !ctx.is_nilpotent(&g0)? {
            return Err(Error::InvalidArgument(format!("{g0} is not nilpotent")));
        }
        let rho0 = ctx.o_ratio(&g0, &h0)?;
        if rho0 >= 1u64 {
            return Err(Error::InvalidArgument(format!(
                "base pair ratio {rho0} is not below 1"
            )));
        }
        Ok(BasePair {
            key: "perm".into(),
            primes: ctx.primes(&g0)?,
            g0,
            h0,
            rho0,
        })
    }
}

/// `o(DihTwo(k)) / o(C(2^k))`, from the closed forms.
pub fn dih_two_ratio(k: u32) -> BigRat {
    let cyclic_psi = BigRat::from_natural(cyclic_psi_closed(2, k));
    let two_k = BigRat::from_u64(2).pow(k as u64);
    &BigRat::ratio(1, 2) + &(&two_k / &cyclic_psi)
}

/// Whether every generator of the permutation group `h` lies in `g`.
pub(crate) fn perm_subgroup(ctx: &EvalContext, g: &GroupExpr, h: &GroupExpr) -> Result<bool> {
    let (GroupExpr::Perm(gp), GroupExpr::Perm(hp)) = (g, h) else {
        return Ok(false);
    };
    let (g_group, g_elements) = ctx.perm_elements(gp)?;
    let (h_group, _) = ctx.perm_elements(hp)?;
    let gd = g_group.degree();
    Ok(h_group.generators().iter().all(|x| {
        let images = x.images();
        let fixes_rest = images
            .get(gd..)
            .unwrap_or(&[])
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == gd + i);
        fixes_rest
            && Permutation::from_images(images[..gd.min(images.len())].to_vec())
                .map(|t| g_elements.contains(&t.extended(gd)))
                .unwrap_or(false)
    }))
}

fn tail(primes: &[u64], rank: usize) -> AbelianDescriptor {
    AbelianDescriptor::new(
        primes
            .iter()
            .flat_map(|&p| {
                std::iter::repeat(PrimePower {
                    prime: p,
                    exponent: 1,
                })
                .take(rank)
            })
            .collect(),
    )
}

fn check_eps(eps: &BigRat) -> Result<()> {
    if eps.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "eps must be positive, got {eps}"
        )))
    }
}

/// `G = ×_{n∈I} C(p_n)^m`, `H = ×_{n∈I} C(p_n)`, ratio `o(G)/o(H)` just
/// below `a` (relative tolerance `eps`).
pub fn construct_ge1(a: &BigRat, opts: &ConstructOptions) -> Result<Certificate> {
    check_eps(&opts.eps)?;
    if *a < 1u64 {
        return Err(Error::InvalidArgument(format!("ge1 target {a} is below 1")));
    }
    let run = opts.run_greedy(a, &opts.excluded)?;
    Ok(Certificate {
        mode: Mode::Ge1,
        target: a.clone(),
        eps: opts.eps.clone(),
        g: GroupExpr::Abelian(tail(&run.primes, opts.m as usize)),
        h: GroupExpr::Abelian(tail(&run.primes, 1)),
        claimed_ratio: run.product,
        trace: Trace {
            m: opts.m,
            excluded: opts.excluded.iter().copied().collect(),
            indices: run.indices,
            base: None,
        },
        witness: Vec::new(),
        version: CERT_VERSION.into(),
    })
}

/// Abelian pair with `o(H)/o(G)` just above `a ∈ (0, 1]`: the `ge1`
/// construction at `1/a`, read upside down.
pub fn construct_le1_abelian(a: &BigRat, opts: &ConstructOptions) -> Result<Certificate> {
    check_eps(&opts.eps)?;
    if !a.is_positive() || *a > 1u64 {
        return Err(Error::InvalidArgument(format!(
            "le1 target must lie in (0, 1], got {a}; 0 is only approached, see the bound plan"
        )));
    }
    let inverse = a.recip().expect("a is positive");
    let run = opts.run_greedy(&inverse, &opts.excluded)?;
    Ok(Certificate {
        mode: Mode::Le1Abelian,
        target: a.clone(),
        eps: opts.eps.clone(),
        g: GroupExpr::Abelian(tail(&run.primes, opts.m as usize)),
        h: GroupExpr::Abelian(tail(&run.primes, 1)),
        claimed_ratio: run.product.recip().expect("products are positive"),
        trace: Trace {
            m: opts.m,
            excluded: opts.excluded.iter().copied().collect(),
            indices: run.indices,
            base: None,
        },
        witness: Vec::new(),
        version: CERT_VERSION.into(),
    })
}

/// Prime indices of the given primes (`2 -> 1`, `3 -> 2`, ...). Fails on
/// any entry that is not a prime.
pub fn prime_indices(primes: &BTreeSet<u64>, cap: u64) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    if let Some(&p) = primes.iter().find(|&&p| !is_prime_u64(p)) {
        return Err(Error::InvalidArgument(format!("{p} is not a prime")));
    }
    let Some(&largest) = primes.iter().next_back() else {
        return Ok(out);
    };
    let mut stream = PrimeStream::with_cap(cap);
    let mut n = 0;
    loop {
        let p = stream.next_prime()?;
        n += 1;
        if primes.contains(&p) {
            out.insert(n);
        }
        if p >= largest {
            return Ok(out);
        }
    }
}

/// `G = g0 × G̃`, `H = h0 × H̃` with the abelian tail over primes not
/// dividing `|g0|`, so `o(G)/o(H) = rho0 · o(G̃)/o(H̃)` just below `a`.
pub fn construct_sub_unit_nilpotent(
    a: &BigRat,
    opts: &ConstructOptions,
    base: &BasePair,
) -> Result<Certificate> {
    check_eps(&opts.eps)?;
    if !a.is_positive() || *a >= 1u64 {
        return Err(Error::InvalidArgument(format!(
            "sub-unit target must lie in (0, 1), got {a}"
        )));
    }
    if base.rho0 > *a {
        return Err(Error::BaseInsufficient {
            rho0: base.rho0.clone(),
            target: a.clone(),
            plan: Box::new(kmz_bound_plan(a)?),
        });
    }
    let mut excluded = opts.excluded.clone();
    excluded.extend(prime_indices(&base.primes, opts.prime_cap)?);
    let target = a / &base.rho0;
    let run = opts.run_greedy(&target, &excluded)?;
    if run.primes.iter().any(|p| base.primes.contains(p)) {
        return Err(Error::Internal(
            "abelian tail shares a prime with the base pair".into(),
        ));
    }
    let g = GroupExpr::product(vec![
        base.g0.clone(),
        GroupExpr::Abelian(tail(&run.primes, opts.m as usize)),
    ]);
    let h = GroupExpr::product(vec![
        base.h0.clone(),
        GroupExpr::Abelian(tail(&run.primes, 1)),
    ]);
    Ok(Certificate {
        mode: Mode::SubUnitNilpotent,
        target: a.clone(),
        eps: opts.eps.clone(),
        g,
        h,
        claimed_ratio: &base.rho0 * &run.product,
        trace: Trace {
            m: opts.m,
            excluded: excluded.into_iter().collect(),
            indices: run.indices,
            base: Some(base.key.clone()),
        },
        witness: vec![WitnessEntry {
            g: base.g0.clone(),
            h: base.h0.clone(),
        }],
        version: CERT_VERSION.into(),
    })
}
