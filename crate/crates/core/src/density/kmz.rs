use malachite_base::num::arithmetic::traits::Pow;
use malachite_nz::natural::Natural;

use crate::arith::{BigRat, PrimeStream};
use crate::error::{Error, Result};

/// The first index the sub-unit bound is used from (`p_4 = 7`).
pub const KMZ_FIRST_INDEX: u64 = 4;

/// A symbolic recipe for ratios below `a` that no desk-scale base pair
/// reaches.
///
/// For a prime `p >= 7` there is a nilpotent group `G = U_s P` (a homocyclic
/// `p`-group `U_s` of exponent `p^s`, `s = p + 1`, extended by a secretive
/// `p`-group `P`) with `o(G) < p^3` while `o(U_s) >= p^p`, so the ratio
/// `o(G)/o(U_s)` lies below `p^3 / p^p`. Those groups are not built here; the
/// plan records which prime suffices and the exact bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KmzPlan {
    pub n: u64,
    pub p: u64,
    pub s: u64,
    /// `p^3 / p^p`, exact.
    pub bound: BigRat,
    pub narrative: String,
}

/// `p^3 / p^p = 1 / p^(p-3)` for `p >= 3`.
pub fn kmz_bound(p: u64) -> BigRat {
    BigRat::from_naturals(Natural::from(1u32), Natural::from(p).pow(p - 3))
}

/// The plan at a given prime index `n >= 4`.
pub fn kmz_plan_at(n: u64) -> Result<KmzPlan> {
    if n < KMZ_FIRST_INDEX {
        return Err(Error::InvalidArgument(format!(
            "the bound is used from n = {KMZ_FIRST_INDEX} on, got {n}"
        )));
    }
    let mut primes = PrimeStream::new();
    let mut p = 0;
    for _ in 0..n {
        p = primes.next_prime()?;
    }
    let bound = kmz_bound(p);
    let s = p + 1;
    let narrative = format!(
        "Take p = p_{n} = {p} and s = p + 1 = {s}. Let U be the homocyclic {p}-group of \
         exponent {p}^{s} and P a secretive {p}-group acting on it, G = U P. Then \
         o(G) < p^3 and o(U) >= p^p, so o(G)/o(U) < p^3/p^p = {bound}. An abelian \
         correction towards the target t then runs the greedy at t * o(U)/o(G) >= 1, \
         over primes other than {p}. Neither G nor the correction target is computed here."
    );
    Ok(KmzPlan {
        n,
        p,
        s,
        bound,
        narrative,
    })
}

/// Smallest `n >= 4` with `p_n^3 / p_n^(p_n) <= a`, compared exactly.
pub fn kmz_bound_plan(a: &BigRat) -> Result<KmzPlan> {
    if !a.is_positive() || *a >= 1u64 {
        return Err(Error::InvalidArgument(format!(
            "bound plans are for targets in (0, 1), got {a}"
        )));
    }
    let mut primes = PrimeStream::new();
    let mut n = 0;
    loop {
        let p = primes.next_prime()?;
        n += 1;
        if n >= KMZ_FIRST_INDEX && kmz_bound(p) <= *a {
            return kmz_plan_at(n);
        }
    }
}
