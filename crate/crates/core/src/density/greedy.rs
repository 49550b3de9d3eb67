use malachite_nz::natural::Natural;

use crate::arith::{product_tree, BigRat, Fraction};
use crate::error::{Error, Result};

use super::sequence::{RatioTerm, RatioTermSequence};

/// Default number of terms the greedy may scan.
pub const DEFAULT_MAX_TERMS: u64 = 1_000_000;

const U: f64 = f64::EPSILON / 2.0;

/// Outcome of [`greedy_subproduct`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyResult {
    /// Included prime indices, increasing.
    pub indices: Vec<u64>,
    /// The primes at those indices.
    pub primes: Vec<u64>,
    /// Exact product of the included terms.
    pub product: BigRat,
    /// Number of (non-excluded) terms examined.
    pub scanned: u64,
}

/// Running product kept two ways: a float with a rigorous relative error
/// bound, and the exact value assembled lazily from the included terms.
struct Product {
    approx: f64,
    // |approx - exact| <= err * exact
    err: f64,
    ulps_per_term: f64,
    settled: Fraction,
    pending: Vec<(Natural, Natural)>,
}

impl Product {
    fn new(ulps_per_term: f64) -> Self {
        Product {
            approx: 1.0,
            err: 0.0,
            ulps_per_term,
            settled: Fraction::one(),
            pending: Vec::new(),
        }
    }

    fn exact(&mut self) -> &Fraction {
        if !self.pending.is_empty() {
            let (nums, dens): (Vec<Natural>, Vec<Natural>) = self.pending.drain(..).unzip();
            let step = Fraction::new(product_tree(&nums), product_tree(&dens));
            self.settled = self.settled.mul(&step);
        }
        &self.settled
    }

    /// Float value of `P * r` and its relative error bound.
    fn times(&self, term: &RatioTerm, m: u32) -> (f64, f64) {
        let r = 1.0 + term.excess_f64(m);
        let x = self.approx * r;
        let e = self.err * (1.0 + 3.0 * self.ulps_per_term * U) + (self.ulps_per_term + 1.0) * U;
        (x, e)
    }

    fn include(&mut self, term: &RatioTerm, m: u32) {
        let (x, e) = self.times(term, m);
        self.approx = x;
        self.err = e;
        self.pending.push((term.num.clone(), term.den.clone()));
    }
}

/// Float view of the target and tolerance for the prefilter. `None` when the
/// values fall outside the comfortable `f64` range, in which case every
/// decision goes to exact arithmetic.
struct Bounds {
    target: f64,
    target_err: f64,
    one_plus_eps: f64,
}

impl Bounds {
    fn new(target: &BigRat, eps: &BigRat) -> Option<Self> {
        let t = target.to_f64_lossy();
        let e = eps.to_f64_lossy();
        if !(t.is_finite() && t > 0.0 && t < 1e300 && e.is_finite() && e > 1e-300) {
            return None;
        }
        // 1 + eps rounds once; its relative error is folded into target_err.
        Some(Bounds {
            target: t,
            target_err: 2.0 * U,
            one_plus_eps: 1.0 + e,
        })
    }
}

enum Decision {
    Yes,
    No,
    Unsure,
}

/// Three-way comparison of `lhs` (relative error `lhs_err`) against the target.
fn compare_le(lhs: f64, lhs_err: f64, b: &Bounds) -> Decision {
    let tol = 2.0 * (lhs_err + b.target_err + 4.0 * U);
    if lhs <= b.target * (1.0 - tol) {
        Decision::Yes
    } else if lhs >= b.target * (1.0 + tol) {
        Decision::No
    } else {
        Decision::Unsure
    }
}

/// Greedy finite subproduct approaching `target` from below.
///
/// Scans the terms of `seq` in order. A term is included when the running
/// product `P` times the term stays `<= target`; after each term the scan
/// stops once `target <= P (1 + eps)`. Every decision is exact: a float
/// prefilter with a proven error bound settles clear cases, and anything
/// within the bound is decided with exact rationals.
pub fn greedy_subproduct(
    target: &BigRat,
    seq: &mut RatioTermSequence,
    eps: &BigRat,
    max_terms: u64,
) -> Result<GreedyResult> {
    let mut run = scan(target, seq, eps, max_terms)?;
    Ok(GreedyResult {
        product: run.product.exact().clone().reduce(),
        indices: run.indices,
        primes: run.primes,
        scanned: run.scanned,
    })
}

/// Index set the greedy picks, without reducing the final product. Replaying
/// a long certificate needs only this, and the reduction is the costly part.
pub(crate) fn greedy_indices(
    target: &BigRat,
    seq: &mut RatioTermSequence,
    eps: &BigRat,
    max_terms: u64,
) -> Result<Vec<u64>> {
    Ok(scan(target, seq, eps, max_terms)?.indices)
}

struct Scan {
    indices: Vec<u64>,
    primes: Vec<u64>,
    product: Product,
    scanned: u64,
}

fn scan(
    target: &BigRat,
    seq: &mut RatioTermSequence,
    eps: &BigRat,
    max_terms: u64,
) -> Result<Scan> {
    if *target < 1u64 {
        return Err(Error::InvalidArgument(format!(
            "greedy target {target} is below 1"
        )));
    }
    if !eps.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "eps must be positive, got {eps}"
        )));
    }
    let m = seq.m();
    let target_frac = Fraction::from_rat(target);
    let one_plus_eps = Fraction::from_rat(&(eps + &BigRat::one()));
    let bounds = Bounds::new(target, eps);
    let mut product = Product::new(RatioTerm::ulps(m));
    let mut indices = Vec::new();
    let mut primes = Vec::new();
    let mut scanned = 0u64;

    if *target == 1u64 {
        return Ok(Scan {
            indices,
            primes,
            product,
            scanned,
        });
    }

    loop {
        if scanned >= max_terms {
            return Err(Error::Budget {
                scanned,
                included: indices.len(),
                achieved: product.approx,
                target_approx: target.to_f64_lossy(),
            });
        }
        let term = seq.next_term()?;
        scanned += 1;

        let (x, e) = product.times(&term, m);
        let fits = match bounds.as_ref().map(|b| compare_le(x, e, b)) {
            Some(Decision::Yes) => true,
            Some(Decision::No) => false,
            _ => {
                let r = Fraction::new(term.num.clone(), term.den.clone());
                product.exact().mul(&r).le(&target_frac)
            }
        };
        if fits {
            product.include(&term, m);
            indices.push(term.index);
            primes.push(term.prime);
        }

        // Stop when target <= P (1 + eps), i.e. not (P (1 + eps) < target).
        let stop = match bounds.as_ref() {
            Some(b) => {
                let y = product.approx * b.one_plus_eps;
                let ye = product.err + 2.0 * U;
                match compare_le(y, ye, b) {
                    // y clearly below target: keep going.
                    Decision::Yes => false,
                    Decision::No => true,
                    Decision::Unsure => target_frac.le(&product.exact().mul(&one_plus_eps)),
                }
            }
            None => target_frac.le(&product.exact().mul(&one_plus_eps)),
        };
        if stop {
            break;
        }
    }

    Ok(Scan {
        indices,
        primes,
        product,
        scanned,
    })
}
