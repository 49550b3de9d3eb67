use crate::error::{Error, Result};

/// Default sieve ceiling: primes up to 10^8 (5 761 455 of them).
pub const DEFAULT_PRIME_CAP: u64 = 100_000_000;

const SEGMENT_LEN: u64 = 1 << 18;

/// Incremental segmented sieve of Eratosthenes yielding 2, 3, 5, 7, …
///
/// Deterministic and restartable ([`PrimeStream::restart`]). Asking for a
/// prime above the configured cap is a [`Error::Resource`] rather than the
/// end of the stream.
#[derive(Debug, Clone)]
pub struct PrimeStream {
    cap: u64,
    base: Vec<u64>,
    segment: Vec<u64>,
    pos: usize,
    next_lo: u64,
    yielded: u64,
    exhausted: bool,
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

impl PrimeStream {
    pub fn new() -> Self {
        Self::with_cap(DEFAULT_PRIME_CAP)
    }

    pub fn with_cap(cap: u64) -> Self {
        PrimeStream {
            cap,
            base: simple_sieve(isqrt(cap.max(4))),
            segment: Vec::new(),
            pos: 0,
            next_lo: 2,
            yielded: 0,
            exhausted: false,
        }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// How many primes have been produced so far.
    pub fn count(&self) -> u64 {
        self.yielded
    }

    pub fn restart(&mut self) {
        self.segment.clear();
        self.pos = 0;
        self.next_lo = 2;
        self.yielded = 0;
        self.exhausted = false;
    }

    fn fill_segment(&mut self) -> bool {
        self.segment.clear();
        self.pos = 0;
        while self.segment.is_empty() {
            let lo = self.next_lo;
            if lo > self.cap {
                return false;
            }
            let hi = (lo + SEGMENT_LEN - 1).min(self.cap);
            let mut composite = vec![false; (hi - lo + 1) as usize];
            for &p in &self.base {
                if p * p > hi {
                    break;
                }
                let start = (p * p).max(lo.div_ceil(p) * p);
                let mut m = start;
                while m <= hi {
                    composite[(m - lo) as usize] = true;
                    m += p;
                }
            }
            self.segment.extend(
                composite
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| !c)
                    .map(|(i, _)| lo + i as u64)
                    .filter(|&n| n >= 2),
            );
            self.next_lo = hi + 1;
        }
        true
    }

    pub fn next_prime(&mut self) -> Result<u64> {
        if self.pos >= self.segment.len() && !self.fill_segment() {
            return Err(Error::Resource {
                what: "prime sieve bound".into(),
                limit: self.cap,
                reached: self.yielded,
            });
        }
        let p = self.segment[self.pos];
        self.pos += 1;
        self.yielded += 1;
        Ok(p)
    }
}

impl Default for PrimeStream {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for PrimeStream {
    type Item = Result<u64>;

    /// Yields each prime; after a resource error the stream is exhausted.
    fn next(&mut self) -> Option<Self::Item> {
        if self.exhausted {
            return None;
        }
        let next = self.next_prime();
        self.exhausted = next.is_err();
        Some(next)
    }
}

/// The `n`-th prime (1-based) under the given sieve cap.
pub fn nth_prime(n: u64, cap: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("prime index must be >= 1".into()));
    }
    let mut stream = PrimeStream::with_cap(cap);
    let mut p = 0;
    for _ in 0..n {
        p = stream.next_prime()?;
    }
    Ok(p)
}
