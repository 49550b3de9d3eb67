use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};

use crate::arith::{BigRat, DEFAULT_PRIME_CAP};
use crate::density::{
    greedy_indices, perm_subgroup, prime_indices, RatioTermSequence, DEFAULT_MAX_TERMS,
};
use crate::error::{Error, Result};
use crate::group::{AbelianDescriptor, EvalContext, GroupExpr, PrimePower};

use super::certificate::{Certificate, Mode, CERT_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictStatus {
    Ok,
    Fail,
    /// Some check could not run within the configured caps; nothing failed.
    Unverifiable,
}

impl VerdictStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictStatus::Ok => "ok",
            VerdictStatus::Fail => "fail",
            VerdictStatus::Unverifiable => "unverifiable",
        }
    }
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: VerdictStatus,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    /// True exactly when every check passed.
    pub ok: bool,
    pub status: VerdictStatus,
    /// The ratio as computed from `g` and `h`, in the certificate's
    /// orientation; `None` when it could not be computed within caps.
    pub recomputed_ratio: Option<BigRat>,
    pub checks: Vec<Check>,
}

impl Verdict {
    fn from_checks(recomputed_ratio: Option<BigRat>, checks: Vec<Check>) -> Self {
        let status = if checks.iter().any(|c| c.status == VerdictStatus::Fail) {
            VerdictStatus::Fail
        } else if checks
            .iter()
            .any(|c| c.status == VerdictStatus::Unverifiable)
        {
            VerdictStatus::Unverifiable
        } else {
            VerdictStatus::Ok
        };
        Verdict {
            ok: status == VerdictStatus::Ok,
            status,
            recomputed_ratio,
            checks,
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_value(&self) -> Value {
        json!({
            "ok": self.ok,
            "status": self.status.as_str(),
            "recomputed_ratio": self.recomputed_ratio.as_ref().map(|r| r.to_string()),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "status": c.status.as_str(),
                "message": c.message,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Group text for messages; certificates can name hundreds of thousands of
/// factors.
fn clip(g: &impl fmt::Display) -> String {
    let s = g.to_string();
    match s.char_indices().nth(80) {
        Some((i, _)) => format!("{}… ({} chars)", &s[..i], s.len()),
        None => s,
    }
}

fn pass(name: &'static str, message: impl Into<String>) -> Check {
    Check {
        name,
        status: VerdictStatus::Ok,
        message: message.into(),
    }
}

fn fail(name: &'static str, message: impl Into<String>) -> Check {
    Check {
        name,
        status: VerdictStatus::Fail,
        message: message.into(),
    }
}

/// Turns evaluation errors into check outcomes: caps make a check
/// unverifiable, anything else fails it.
fn from_err(name: &'static str, e: Error) -> Check {
    match e {
        Error::Resource { .. } => Check {
            name,
            status: VerdictStatus::Unverifiable,
            message: e.to_string(),
        },
        other => fail(name, other.to_string()),
    }
}

fn bool_check(
    name: &'static str,
    ok: bool,
    yes: impl Into<String>,
    no: impl Into<String>,
) -> Check {
    if ok {
        pass(name, yes)
    } else {
        fail(name, no)
    }
}

/// Checks a certificate from first principles with a default context.
pub fn verify(cert: &Certificate) -> Result<Verdict> {
    verify_with(cert, &EvalContext::new())
}

/// Checks a certificate. The ratio is recomputed from `g` and `h` alone; the
/// trace is only compared against them and replayed.
///
/// Returns `Err` when a group expression cannot be resolved at all (for
/// example a missing generator file); cap overruns yield an
/// [`VerdictStatus::Unverifiable`] verdict instead.
pub fn verify_with(cert: &Certificate, ctx: &EvalContext) -> Result<Verdict> {
    let mut checks = Vec::new();

    checks.push(bool_check(
        "version",
        cert.version == CERT_VERSION,
        CERT_VERSION,
        format!("unsupported version `{}`", cert.version),
    ));
    checks.push(bool_check(
        "eps_positive",
        cert.eps.is_positive(),
        format!("eps = {}", cert.eps.abbreviated()),
        format!("eps = {} is not positive", cert.eps.abbreviated()),
    ));
    let in_domain = match cert.mode {
        Mode::Ge1 => cert.target >= 1u64,
        Mode::Le1Abelian => cert.target.is_positive() && cert.target <= 1u64,
        Mode::SubUnitNilpotent => cert.target.is_positive() && cert.target < 1u64,
    };
    checks.push(bool_check(
        "mode_domain",
        in_domain,
        format!(
            "target {} suits mode {}",
            cert.target.abbreviated(),
            cert.mode
        ),
        format!(
            "target {} is outside the range of mode {}",
            cert.target.abbreviated(),
            cert.mode
        ),
    ));

    // Surface unresolvable expressions as errors, caps as unverifiable.
    let recomputed = {
        let (num, den) = if cert.mode.is_inverse() {
            (&cert.h, &cert.g)
        } else {
            (&cert.g, &cert.h)
        };
        // Compared unreduced: a gcd on a multi-million-digit ratio costs far
        // more than the cross-multiplication.
        match ctx.o_ratio_fraction(num, den) {
            Ok(f) if f.equals(&cert.claimed_ratio) => Some(cert.claimed_ratio.clone()),
            Ok(f) => Some(f.reduce()),
            Err(e @ Error::Resource { .. }) => {
                checks.push(from_err("ratio_exact", e));
                None
            }
            Err(e) => return Err(e),
        }
    };
    if let Some(r) = &recomputed {
        checks.push(bool_check(
            "ratio_exact",
            *r == cert.claimed_ratio,
            format!("recomputed {}", r.abbreviated()),
            format!(
                "recomputed {}, claimed {}",
                r.abbreviated(),
                cert.claimed_ratio.abbreviated()
            ),
        ));
    }

    checks.push(tolerance_check(cert));
    checks.push(witness_check(cert, ctx));
    checks.push(coprimality_check(cert, ctx));
    checks.push(structure_check(cert, ctx));
    checks.push(trace_check(cert, ctx));
    checks.push(replay_check(cert, ctx));

    Ok(Verdict::from_checks(recomputed, checks))
}

fn tolerance_check(cert: &Certificate) -> Check {
    const NAME: &str = "tolerance";
    let one_plus = &cert.eps + &BigRat::one();
    let (c, t) = (&cert.claimed_ratio, &cert.target);
    let ok = if cert.mode.is_inverse() {
        t <= c && *c <= t * &one_plus
    } else {
        c <= t && *t <= c * &one_plus
    };
    let shape = if cert.mode.is_inverse() {
        "target <= claimed <= target (1 + eps)"
    } else {
        "claimed <= target <= claimed (1 + eps)"
    };
    bool_check(NAME, ok, shape, format!("violates {shape}"))
}

/// Multiset difference of cyclic factors; `None` if `sub` is not contained.
fn remove_factors(from: &AbelianDescriptor, sub: &AbelianDescriptor) -> Option<AbelianDescriptor> {
    let mut rest: Vec<PrimePower> = from.factors().to_vec();
    for f in sub.factors() {
        let i = rest.iter().position(|x| x == f)?;
        rest.remove(i);
    }
    Some(AbelianDescriptor::new(rest))
}

/// Every non-abelian factor of `h` must be matched by a witness entry whose
/// `g` side is a distinct factor of `g`; abelian witness parts are taken out
/// of `h`'s abelian part, and what is left must be a subgroup type of `g`'s
/// abelian part (per-prime partition containment).
fn witness_check(cert: &Certificate, ctx: &EvalContext) -> Check {
    const NAME: &str = "subgroup_witness";
    let mut g_pool: Vec<&GroupExpr> = cert.g.structured_leaves();
    let mut h_pool: Vec<&GroupExpr> = cert.h.structured_leaves();
    let mut h_abelian = cert.h.abelian_part();
    for (i, w) in cert.witness.iter().enumerate() {
        let Some(gi) = g_pool.iter().position(|x| **x == w.g) else {
            return fail(
                NAME,
                format!("witness[{i}].g = {} is not a factor of g", clip(&w.g)),
            );
        };
        g_pool.remove(gi);
        for leaf in w.h.leaves() {
            match leaf {
                GroupExpr::Abelian(a) => match remove_factors(&h_abelian, a) {
                    Some(rest) => h_abelian = rest,
                    None => {
                        return fail(
                            NAME,
                            format!("witness[{i}].h part {} is not a factor of h", clip(a)),
                        )
                    }
                },
                other => match h_pool.iter().position(|x| *x == other) {
                    Some(hi) => {
                        h_pool.remove(hi);
                    }
                    None => {
                        return fail(
                            NAME,
                            format!("witness[{i}].h part {} is not a factor of h", clip(other)),
                        )
                    }
                },
            }
        }
        let contained = match (&w.g, &w.h) {
            (GroupExpr::Named(n), h) => Ok(n.has_subgroup(h)),
            (GroupExpr::Perm(_), GroupExpr::Perm(_)) => perm_subgroup(ctx, &w.g, &w.h),
            (GroupExpr::Perm(_), h) if *h == GroupExpr::trivial() => Ok(true),
            _ => Ok(false),
        };
        match contained {
            Ok(true) => {}
            Ok(false) => {
                return fail(
                    NAME,
                    format!(
                        "no subgroup of {} of type {} is known",
                        clip(&w.g),
                        clip(&w.h)
                    ),
                )
            }
            Err(e) => return from_err(NAME, e),
        }
    }
    if let Some(extra) = h_pool.first() {
        return fail(NAME, format!("factor {} of h has no witness", clip(extra)));
    }
    let g_abelian = cert.g.abelian_part();
    if !g_abelian.contains_subgroup_type(&h_abelian) {
        return fail(
            NAME,
            format!(
                "abelian part {} of h is not a subgroup type of {}",
                clip(&h_abelian),
                clip(&g_abelian)
            ),
        );
    }
    pass(
        NAME,
        format!(
            "{} witness entries, abelian parts contained",
            cert.witness.len()
        ),
    )
}

/// The base factors named in the witness must have orders coprime to the rest
/// of `g` and `h`, which is what makes the ratio split as a product.
fn coprimality_check(cert: &Certificate, ctx: &EvalContext) -> Check {
    const NAME: &str = "coprimality";
    if cert.witness.is_empty() {
        return pass(NAME, "no composed parts");
    }
    let inner = || -> Result<Check> {
        for (label, whole, part) in [
            (
                "g",
                &cert.g,
                cert.witness.iter().map(|w| w.g.clone()).collect::<Vec<_>>(),
            ),
            (
                "h",
                &cert.h,
                cert.witness.iter().map(|w| w.h.clone()).collect::<Vec<_>>(),
            ),
        ] {
            let base_primes: BTreeSet<u64> = part
                .iter()
                .map(|p| ctx.primes(p))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
            let rest = whole.abelian_part();
            if let Some(p) = rest.primes().iter().find(|p| base_primes.contains(p)) {
                // Abelian witness parts of h legitimately share primes with h's
                // abelian part; only the tail after removing them matters.
                let tail = if label == "h" {
                    part.iter()
                        .try_fold(rest.clone(), |r, w| remove_factors(&r, &w.abelian_part()))
                        .unwrap_or_else(|| rest.clone())
                } else {
                    rest.clone()
                };
                if tail.primes().iter().any(|q| base_primes.contains(q)) {
                    return Ok(fail(
                        NAME,
                        format!("prime {p} divides both the base and the tail of {label}"),
                    ));
                }
            }
        }
        Ok(pass(NAME, "base and tail orders are coprime"))
    };
    inner().unwrap_or_else(|e| from_err(NAME, e))
}

/// Nilpotency for every mode, and commutativity for the abelian mode.
fn structure_check(cert: &Certificate, ctx: &EvalContext) -> Check {
    const NAME: &str = "nilpotency";
    let inner = || -> Result<Check> {
        if !ctx.is_nilpotent(&cert.g)? {
            return Ok(fail(NAME, "g is not nilpotent"));
        }
        if cert.mode == Mode::Le1Abelian && !ctx.is_abelian(&cert.g)? {
            return Ok(fail(NAME, "mode le1_abelian needs an abelian g"));
        }
        if cert.mode == Mode::SubUnitNilpotent && ctx.is_abelian(&cert.g)? {
            return Ok(fail(NAME, "mode sub_unit_nilpotent needs a nonabelian g"));
        }
        Ok(pass(NAME, "g is nilpotent"))
    };
    inner().unwrap_or_else(|e| from_err(NAME, e))
}

fn homocyclic_tail(indices_primes: &[u64], rank: usize) -> AbelianDescriptor {
    AbelianDescriptor::new(
        indices_primes
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

fn primes_at(indices: &[u64]) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(indices.len());
    let mut stream = crate::arith::PrimeStream::new();
    let mut n = 0;
    for &i in indices {
        while n < i {
            let p = stream.next_prime()?;
            n += 1;
            if n == i {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// `g` and `h` must be exactly what the trace describes.
fn trace_check(cert: &Certificate, ctx: &EvalContext) -> Check {
    const NAME: &str = "trace_consistency";
    let t = &cert.trace;
    let increasing = |v: &[u64]| v.windows(2).all(|w| w[0] < w[1]) && v.first() != Some(&0);
    if !increasing(&t.indices) || !increasing(&t.excluded) {
        return fail(NAME, "index lists must be increasing and 1-based");
    }
    let excluded: BTreeSet<u64> = t.excluded.iter().copied().collect();
    if let Some(i) = t.indices.iter().find(|i| excluded.contains(i)) {
        return fail(NAME, format!("index {i} is both included and excluded"));
    }
    if !(2..=64).contains(&t.m) {
        return fail(NAME, format!("m = {} is out of range", t.m));
    }
    let inner = || -> Result<Check> {
        let primes = primes_at(&t.indices)?;
        let tail_g = GroupExpr::Abelian(homocyclic_tail(&primes, t.m as usize));
        let tail_h = GroupExpr::Abelian(homocyclic_tail(&primes, 1));
        let (expect_g, expect_h) = match cert.mode {
            Mode::Ge1 | Mode::Le1Abelian => {
                if t.base.is_some() || !cert.witness.is_empty() {
                    return Ok(fail(NAME, "abelian modes carry no base pair"));
                }
                (tail_g, tail_h)
            }
            Mode::SubUnitNilpotent => {
                let [w] = cert.witness.as_slice() else {
                    return Ok(fail(
                        NAME,
                        "sub-unit certificates carry exactly one witness",
                    ));
                };
                if t.base.is_none() {
                    return Ok(fail(NAME, "sub-unit certificate without a base key"));
                }
                let base_idx = prime_indices(&ctx.primes(&w.g)?, DEFAULT_PRIME_CAP)?;
                if let Some(i) = base_idx.iter().find(|i| !excluded.contains(i)) {
                    return Ok(fail(NAME, format!("base prime index {i} is not excluded")));
                }
                (
                    GroupExpr::product(vec![w.g.clone(), tail_g]),
                    GroupExpr::product(vec![w.h.clone(), tail_h]),
                )
            }
        };
        if expect_g != cert.g || expect_h != cert.h {
            return Ok(fail(
                NAME,
                "g or h differs from the groups the trace describes",
            ));
        }
        Ok(pass(NAME, format!("{} included indices", t.indices.len())))
    };
    inner().unwrap_or_else(|e| from_err(NAME, e))
}

/// Re-runs the greedy from target, eps, m and J and compares the index set.
fn replay_check(cert: &Certificate, ctx: &EvalContext) -> Check {
    const NAME: &str = "greedy_replay";
    let inner = || -> Result<Check> {
        if !cert.eps.is_positive() || !(2..=64).contains(&cert.trace.m) {
            return Ok(fail(NAME, "cannot replay with these parameters"));
        }
        let goal = match cert.mode {
            Mode::Ge1 => cert.target.clone(),
            Mode::Le1Abelian => match cert.target.recip() {
                Some(r) if cert.target.is_positive() => r,
                _ => return Ok(fail(NAME, "target must be positive")),
            },
            Mode::SubUnitNilpotent => {
                let [w] = cert.witness.as_slice() else {
                    return Ok(fail(
                        NAME,
                        "sub-unit certificates carry exactly one witness",
                    ));
                };
                &cert.target / &ctx.o_ratio(&w.g, &w.h)?
            }
        };
        if goal < 1u64 {
            return Ok(fail(
                NAME,
                format!("greedy goal {} is below 1", goal.abbreviated()),
            ));
        }
        let mut seq =
            RatioTermSequence::new(cert.trace.m, cert.trace.excluded.iter().copied().collect())?;
        let replay = greedy_indices(&goal, &mut seq, &cert.eps, DEFAULT_MAX_TERMS)?;
        Ok(bool_check(
            NAME,
            replay == cert.trace.indices,
            "greedy reproduces the index set",
            format!(
                "greedy picks {} indices, the trace lists {}",
                replay.len(),
                cert.trace.indices.len()
            ),
        ))
    };
    inner().unwrap_or_else(|e| match e {
        Error::Budget { .. } => fail(NAME, e.to_string()),
        other => from_err(NAME, other),
    })
}
