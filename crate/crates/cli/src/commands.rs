use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use avgord_core::density::{kmz_plan_at, prime_indices, seq_diagnostics_with_cap, KMZ_FIRST_INDEX};
use avgord_core::group::MAX_DIH_TWO;
use avgord_core::oracle::{center, subgroup_lattice, ElementSet, PermGroup};
use avgord_core::{
    abelian_order_distribution, construct_ge1, construct_le1_abelian, construct_sub_unit_nilpotent,
    cyclic_psi_closed, kmz_bound_plan, verify_with, AbelianDescriptor, BasePair, BigRat,
    Certificate, ConstructOptions, Error, EvalContext, GroupExpr, NamedGroup, Natural, Result,
    VerdictStatus,
};
use serde_json::{json, Value};

use crate::output::{self, both, decimal, exact, float, group_text, line, print_json};
use crate::{exit, ApproxArgs, Settings};

/// Largest order `oracle-check` will enumerate.
pub const MAX_ORACLE_ORDER: u64 = 4096;
/// Subgroup lattices are only built up to this order.
const LATTICE_ORDER: u64 = 64;

pub fn o(settings: &Settings, expr: &str) -> Result<u8> {
    let g = GroupExpr::parse(expr)?;
    let ctx = EvalContext::new().with_enum_cap(settings.enum_cap);
    let avg = ctx.avg_order(&g)?;
    let order = ctx.order(&g)?;
    let psi = &avg * &BigRat::from_natural(order.clone());
    if settings.json {
        print_json(&json!({
            "group": g.to_string(),
            "order": order.to_string(),
            "psi": psi.numerator_abs().to_string(),
            "o": avg.to_string(),
            "o_decimal": decimal(&avg),
        }));
    } else {
        line("group", group_text(&g.to_string()));
        line("order", order.to_string());
        line("psi", psi.numerator_abs().to_string());
        line("o", both(&avg));
    }
    Ok(exit::OK)
}

fn parse_rat(field: &str, text: &str) -> Result<BigRat> {
    BigRat::parse_field(field, text)
}

pub fn approx(settings: &Settings, args: &ApproxArgs) -> Result<u8> {
    let target = parse_rat("target", &args.target)?;
    let eps = parse_rat("eps", &args.eps)?;
    if target < 0u64 {
        return Err(Error::InvalidArgument(format!(
            "target must be >= 0, got {target}"
        )));
    }
    if args.plan {
        let plan = if target.is_zero() {
            kmz_plan_at(KMZ_FIRST_INDEX)?
        } else if target < 1u64 {
            kmz_bound_plan(&target)?
        } else {
            return Err(Error::InvalidArgument(
                "--plan is for targets in [0, 1); larger targets are constructed directly".into(),
            ));
        };
        output::print_plan(settings, &plan);
        return Ok(exit::OK);
    }
    if target.is_zero() {
        return Err(Error::InvalidArgument(
            "0 is a limit, not an attained ratio; use --plan for the bound construction".into(),
        ));
    }
    if !eps.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "eps must be positive, got {eps}"
        )));
    }

    let excluded_primes: BTreeSet<u64> = args.exclude.iter().copied().collect();
    let opts = ConstructOptions::new(eps)
        .with_m(args.m)
        .with_excluded(prime_indices(&excluded_primes, settings.prime_cap)?)
        .with_max_terms(args.max_terms)
        .with_prime_cap(settings.prime_cap);

    let cert = if target >= 1u64 {
        construct_ge1(&target, &opts)?
    } else if !args.nilpotent {
        construct_le1_abelian(&target, &opts)?
    } else {
        let base = base_pair(settings, args, &target)?;
        construct_sub_unit_nilpotent(&target, &opts, &base)?
    };
    cert.write_to(&args.out)?;

    if settings.json {
        let mut v = json!({
            "certificate": args.out.display().to_string(),
            "claimed_ratio": cert.claimed_ratio.to_string(),
            "claimed_ratio_decimal": decimal(&cert.claimed_ratio),
            "eps": cert.eps.to_string(),
            "mode": cert.mode.as_str(),
            "target": cert.target.to_string(),
            "target_decimal": decimal(&cert.target),
            "terms": cert.trace.indices.len(),
        });
        if let Some(base) = &cert.trace.base {
            v["base"] = json!(base);
        }
        print_json(&v);
    } else {
        line("mode", cert.mode.as_str());
        line("target", both(&cert.target));
        line("eps", both(&cert.eps));
        line("claimed ratio", both(&cert.claimed_ratio));
        if let Some(base) = &cert.trace.base {
            line("base pair", base);
        }
        line("terms", indices_text(&cert.trace.indices));
        line("G", group_text(&cert.g.to_string()));
        line("H", group_text(&cert.h.to_string()));
        line("certificate", args.out.display().to_string());
    }
    Ok(exit::OK)
}

fn indices_text(indices: &[u64]) -> String {
    match indices {
        [] => "0 (empty abelian part)".into(),
        [a] => format!("1 (index {a})"),
        _ if indices.len() <= 12 => {
            let list: Vec<String> = indices.iter().map(u64::to_string).collect();
            format!("{} (indices {})", indices.len(), list.join(", "))
        }
        _ => format!(
            "{} (indices {} to {})",
            indices.len(),
            indices[0],
            indices[indices.len() - 1]
        ),
    }
}

fn base_pair(settings: &Settings, args: &ApproxArgs, target: &BigRat) -> Result<BasePair> {
    if let (Some(g), Some(h)) = (&args.base_g, &args.base_h) {
        // Certificate paths are stored relative to the certificate's
        // directory when possible, so the pair travels with it.
        let ctx = EvalContext::new().with_enum_cap(settings.enum_cap);
        let mut base = BasePair::from_perm_files(absolute(g)?, absolute(h)?, &ctx)?;
        let out_dir = absolute(
            args.out
                .parent()
                .filter(|p| !p.as_os_str().is_empty())
                .unwrap_or(Path::new(".")),
        )?;
        base.g0 = GroupExpr::Perm(relative_to(&absolute(g)?, &out_dir));
        base.h0 = GroupExpr::Perm(relative_to(&absolute(h)?, &out_dir));
        return Ok(base);
    }
    match &args.base {
        Some(key) => BasePair::builtin(key),
        // Without a pair below the target, the last dihedral pair makes the
        // constructor report the shortfall together with the bound plan.
        None => Ok(BasePair::auto_for(target).unwrap_or(BasePair::dih_two(MAX_DIH_TWO)?)),
    }
}

fn absolute(path: &Path) -> Result<PathBuf> {
    path.canonicalize().map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn relative_to(path: &Path, dir: &Path) -> PathBuf {
    path.strip_prefix(dir)
        .map(Path::to_path_buf)
        .unwrap_or_else(|_| path.to_path_buf())
}

pub fn verify(settings: &Settings, path: &Path) -> Result<u8> {
    let cert = Certificate::read_from(path)?;
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let ctx = EvalContext::new()
        .with_enum_cap(settings.enum_cap)
        .with_base_dir(dir);
    let verdict = verify_with(&cert, &ctx)?;
    if settings.json {
        print_json(&verdict.to_value());
    } else {
        for c in &verdict.checks {
            println!("{:<13}{:<19}{}", c.status.as_str(), c.name, c.message);
        }
        if let Some(r) = &verdict.recomputed_ratio {
            line("ratio", both(r));
        }
        line("verdict", verdict.status.as_str());
    }
    Ok(match verdict.status {
        VerdictStatus::Ok => exit::OK,
        VerdictStatus::Fail => exit::VERIFICATION,
        VerdictStatus::Unverifiable => exit::RESOURCE,
    })
}

/// Outcome of one oracle suite.
struct Suite {
    name: &'static str,
    cases: usize,
    mismatches: Vec<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            name,
            cases: 0,
            mismatches: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.mismatches.push(what());
        }
    }

    fn to_value(&self) -> Value {
        json!({
            "name": self.name,
            "cases": self.cases,
            "mismatches": self.mismatches,
        })
    }
}

fn moduli(desc: &AbelianDescriptor) -> Vec<u64> {
    desc.factors()
        .iter()
        .map(|f| f.prime.pow(f.exponent))
        .collect()
}

fn avg_of(elements: &ElementSet) -> BigRat {
    elements.order_distribution().avg_order()
}

pub fn oracle_check(settings: &Settings, max_order: u64) -> Result<u8> {
    if max_order > MAX_ORACLE_ORDER {
        return Err(Error::Resource {
            what: "oracle-check group order".into(),
            limit: MAX_ORACLE_ORDER,
            reached: max_order,
        });
    }
    let cap = settings.enum_cap;
    let mut abelian = Suite::new("abelian distributions");
    let mut cyclic = Suite::new("cyclic psi closed form");
    let mut registry = Suite::new("registry groups");
    let mut lattice = Suite::new("abelian subgroup ratios");

    for desc in AbelianDescriptor::all_up_to_order(max_order) {
        let brute = PermGroup::cyclic_product(&moduli(&desc)).enumerate(cap)?;
        let closed = abelian_order_distribution(&desc);
        abelian.record(closed == brute.order_distribution(), || format!("{desc}"));

        if let [f] = desc.factors() {
            let psi = brute.order_distribution().psi();
            cyclic.record(cyclic_psi_closed(f.prime, f.exponent) == psi, || {
                format!("{desc}")
            });
        }

        if desc.order() <= LATTICE_ORDER {
            let lat = subgroup_lattice(
                &PermGroup::cyclic_product(&moduli(&desc)),
                LATTICE_ORDER as usize,
            )?;
            let whole = avg_of(lat.elements());
            for h in lat.subgroups() {
                lattice.record(whole >= avg_of(&h), || {
                    format!("{desc}, subgroup of order {}", h.len())
                });
            }
        }
    }

    let limit = Natural::from(max_order);
    let mut named = vec![NamedGroup::D4, NamedGroup::Q8, NamedGroup::C4];
    named.extend(
        (2..=MAX_DIH_TWO)
            .map(NamedGroup::DihTwo)
            .take_while(|g| g.order() <= limit),
    );
    for g in named.into_iter().filter(|g| g.order() <= limit) {
        let perm = g.perm_group();
        let all = perm.enumerate(cap)?;
        let z = center(&perm, cap)?;
        let ok = g.order_distribution() == all.order_distribution()
            && avg_of(&all) >= avg_of(&z)
            && avg_order_matches(&g, &all)?;
        registry.record(ok, || g.to_string());
    }

    let suites = [abelian, cyclic, registry, lattice];
    let clean = suites.iter().all(|s| s.mismatches.is_empty());
    if settings.json {
        print_json(&json!({
            "max_order": max_order,
            "ok": clean,
            "suites": suites.iter().map(Suite::to_value).collect::<Vec<_>>(),
        }));
    } else {
        for s in &suites {
            let status = if s.mismatches.is_empty() {
                "all match".to_string()
            } else {
                format!(
                    "{} MISMATCHES: {}",
                    s.mismatches.len(),
                    s.mismatches.join("; ")
                )
            };
            println!("{:<25}{} cases, {status}", s.name, s.cases);
        }
        println!("{:<25}{}", "result", if clean { "ok" } else { "fail" });
    }
    Ok(if clean { exit::OK } else { exit::VERIFICATION })
}

fn avg_order_matches(g: &NamedGroup, all: &ElementSet) -> Result<bool> {
    Ok(EvalContext::new().avg_order(&GroupExpr::Named(*g))? == avg_of(all))
}

pub fn seq(settings: &Settings, m: u32, count: u64) -> Result<u8> {
    let rows = seq_diagnostics_with_cap(m, count, settings.prime_cap)?;
    if settings.json {
        print_json(&json!({
            "m": m,
            "rows": rows.iter().map(|r| json!({
                "n": r.n,
                "p": r.p,
                "r": r.r.to_string(),
                "x": r.x,
                "px": r.px,
                "partial_sum": r.partial_sum,
            })).collect::<Vec<_>>(),
        }));
    } else {
        println!(
            "{:>8} {:>10} {:>36} {:>21} {:>21} {:>21}",
            "n", "p", "r", "x = ln r", "p*x", "sum x"
        );
        for r in &rows {
            println!(
                "{:>8} {:>10} {:>36} {:>21} {:>21} {:>21}",
                r.n,
                r.p,
                exact(&r.r),
                float(r.x),
                float(r.px),
                float(r.partial_sum)
            );
        }
    }
    Ok(exit::OK)
}
