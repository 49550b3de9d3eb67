use std::collections::BTreeSet;

use crate::arith::{BigRat, DEFAULT_PRIME_CAP};
use crate::error::{Error, Result};

use super::sequence::RatioTermSequence;

/// One row of [`seq_diagnostics`]. Only `r` is exact.
#[derive(Debug, Clone, PartialEq)]
pub struct SeqRow {
    pub n: u64,
    pub p: u64,
    pub r: BigRat,
    /// `ln r_n`
    pub x: f64,
    /// `p_n · x_n`, which tends to 1
    pub px: f64,
    /// `x_1 + … + x_n`
    pub partial_sum: f64,
}

/// The first `count` terms `r_n` with their logarithms. Logarithms go through
/// `ln_1p` of the float excess `r_n - 1`, which stays accurate as `r_n → 1`.
pub fn seq_diagnostics(m: u32, count: u64) -> Result<Vec<SeqRow>> {
    seq_diagnostics_with_cap(m, count, DEFAULT_PRIME_CAP)
}

pub fn seq_diagnostics_with_cap(m: u32, count: u64, prime_cap: u64) -> Result<Vec<SeqRow>> {
    if count == 0 {
        return Err(Error::InvalidArgument("need at least one row".into()));
    }
    let mut seq = RatioTermSequence::with_prime_cap(m, BTreeSet::new(), prime_cap)?;
    let mut rows = Vec::with_capacity(count.min(1 << 20) as usize);
    let mut sum = 0.0;
    for _ in 0..count {
        let t = seq.next_term()?;
        let x = t.excess_f64(m).ln_1p();
        sum += x;
        rows.push(SeqRow {
            n: t.index,
            p: t.prime,
            r: t.value(),
            x,
            px: t.prime as f64 * x,
            partial_sum: sum,
        });
    }
    Ok(rows)
}
