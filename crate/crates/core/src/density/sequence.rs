use std::collections::BTreeSet;

use malachite_base::num::arithmetic::traits::Pow;
use malachite_nz::natural::Natural;

use crate::arith::{BigRat, PrimeStream, DEFAULT_PRIME_CAP};
use crate::error::{Error, Result};

/// One term `r_n = o(C(p)^m) / o(C(p))` with `p` the `n`-th prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioTerm {
    /// 1-based prime index `n`.
    pub index: u64,
    pub prime: u64,
    /// `p^(m+1) - p + 1`
    pub num: Natural,
    /// `p^(m+1) - p^m + p^(m-1)`
    pub den: Natural,
}

impl RatioTerm {
    pub fn new(index: u64, prime: u64, m: u32) -> Self {
        let (num, den) = ratio_fraction(prime, m);
        RatioTerm {
            index,
            prime,
            num,
            den,
        }
    }

    pub fn value(&self) -> BigRat {
        BigRat::from_naturals(self.num.clone(), self.den.clone())
    }

    /// `r_n - 1 = (p^(m-1) - 1)(p - 1) / (p^(m-1) (p^2 - p + 1))` in floating
    /// point. Each operation rounds once; see [`RatioTerm::ulps`].
    pub fn excess_f64(&self, m: u32) -> f64 {
        let q = self.prime as f64;
        let a = 1.0 - (1.0 / q).powi(m as i32 - 1);
        a * (q - 1.0) / (q.mul_add(q, -q) + 1.0)
    }

    /// Upper bound, in units of `2^-53`, on the relative error of
    /// `1 + excess_f64` against the exact term, for a given `m`.
    pub fn ulps(m: u32) -> f64 {
        m as f64 + 8.0
    }
}

/// The exact fraction for `r_n` at prime `p`, not reduced.
pub fn ratio_fraction(p: u64, m: u32) -> (Natural, Natural) {
    let p = Natural::from(p);
    let pm1 = (&p).pow(m as u64 - 1);
    let pm = &pm1 * &p;
    let pm_plus = &pm * &p;
    let num = &pm_plus - &p + Natural::from(1u32);
    let den = pm_plus - pm + pm1;
    (num, den)
}

/// The sequence `r_n` for `n` outside the excluded index set `J`, in
/// increasing `n`.
#[derive(Debug, Clone)]
pub struct RatioTermSequence {
    m: u32,
    excluded: BTreeSet<u64>,
    primes: PrimeStream,
    next_index: u64,
}

impl RatioTermSequence {
    pub fn new(m: u32, excluded: BTreeSet<u64>) -> Result<Self> {
        Self::with_prime_cap(m, excluded, DEFAULT_PRIME_CAP)
    }

    pub fn with_prime_cap(m: u32, excluded: BTreeSet<u64>, prime_cap: u64) -> Result<Self> {
        if !(2..=64).contains(&m) {
            return Err(Error::InvalidArgument(format!(
                "m must be in 2..=64, got {m}"
            )));
        }
        if excluded.contains(&0) {
            return Err(Error::InvalidArgument("prime indices start at 1".into()));
        }
        Ok(RatioTermSequence {
            m,
            excluded,
            primes: PrimeStream::with_cap(prime_cap),
            next_index: 1,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn excluded(&self) -> &BTreeSet<u64> {
        &self.excluded
    }

    pub fn restart(&mut self) {
        self.primes.restart();
        self.next_index = 1;
    }

    pub fn next_term(&mut self) -> Result<RatioTerm> {
        loop {
            let p = self.primes.next_prime()?;
            let n = self.next_index;
            self.next_index += 1;
            if !self.excluded.contains(&n) {
                return Ok(RatioTerm::new(n, p, self.m));
            }
        }
    }
}

impl Iterator for RatioTermSequence {
    type Item = Result<RatioTerm>;

    fn next(&mut self) -> Option<Self::Item> {
        Some(self.next_term())
    }
}
