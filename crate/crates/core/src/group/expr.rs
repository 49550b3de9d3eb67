use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::descriptor::AbelianDescriptor;
use super::registry::NamedGroup;

/// Upper bound on `^k` so a typo cannot request an absurd direct power.
const MAX_POWER: u64 = 1 << 16;

/// A group described symbolically.
///
/// Text form: terms separated by ` x `, each term one of `C(n)` (cyclic of
/// prime-power order `n`), a registry key (`D4`, `Q8`, `C4`, `DihTwo(k)`),
/// or `perm:<path>` (generators file), optionally followed by `^k`. `1` or the
/// empty string is the trivial group. Neighbouring abelian terms are merged
/// into a single [`GroupExpr::Abelian`] leaf, so printing and re-parsing is
/// the identity on parsed expressions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    Abelian(AbelianDescriptor),
    Named(NamedGroup),
    Perm(PathBuf),
    Product(Vec<GroupExpr>),
}

impl GroupExpr {
    pub fn trivial() -> Self {
        GroupExpr::Abelian(AbelianDescriptor::trivial())
    }

    /// Direct product of the given factors, normalized the same way the
    /// parser normalizes: nested products flattened, neighbouring abelian
    /// leaves merged, trivial factors dropped.
    pub fn product(factors: Vec<GroupExpr>) -> Self {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                GroupExpr::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        // Runs of abelian leaves are collected and merged once; merging
        // pairwise is quadratic in certificates with many factors.
        let mut out: Vec<GroupExpr> = Vec::new();
        let mut run: Vec<AbelianDescriptor> = Vec::new();
        let flush = |run: &mut Vec<AbelianDescriptor>, out: &mut Vec<GroupExpr>| {
            if !run.is_empty() {
                out.push(GroupExpr::Abelian(AbelianDescriptor::merge_all(run.iter())));
                run.clear();
            }
        };
        for f in flat {
            match f {
                GroupExpr::Abelian(a) if a.is_trivial() => {}
                GroupExpr::Abelian(a) => run.push(a),
                other => {
                    flush(&mut run, &mut out);
                    out.push(other);
                }
            }
        }
        flush(&mut run, &mut out);
        match out.len() {
            0 => GroupExpr::trivial(),
            1 => out.pop().unwrap(),
            _ => GroupExpr::Product(out),
        }
    }

    /// Leaves in order (a non-product expression is its own single leaf).
    pub fn leaves(&self) -> Vec<&GroupExpr> {
        match self {
            GroupExpr::Product(fs) => fs.iter().flat_map(|f| f.leaves()).collect(),
            leaf => vec![leaf],
        }
    }

    /// All abelian leaves merged into one descriptor.
    pub fn abelian_part(&self) -> AbelianDescriptor {
        AbelianDescriptor::merge_all(self.leaves().into_iter().filter_map(|l| match l {
            GroupExpr::Abelian(a) => Some(a),
            _ => None,
        }))
    }

    /// Non-abelian-descriptor leaves (named and permutation groups).
    pub fn structured_leaves(&self) -> Vec<&GroupExpr> {
        self.leaves()
            .into_iter()
            .filter(|l| !matches!(l, GroupExpr::Abelian(_)))
            .collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() {
            return Ok(GroupExpr::trivial());
        }
        let mut terms = Vec::new();
        let mut expect_term = true;
        for tok in tokens {
            if expect_term {
                if tok == "x" {
                    return Err(Error::parse(
                        "group",
                        format!("missing term before `x` in `{text}`"),
                    ));
                }
                terms.push(parse_term(tok)?);
            } else if tok != "x" {
                return Err(Error::parse(
                    "group",
                    format!("expected ` x ` between terms, found `{tok}` in `{text}`"),
                ));
            }
            expect_term = !expect_term;
        }
        if expect_term {
            return Err(Error::parse("group", format!("trailing `x` in `{text}`")));
        }
        Ok(GroupExpr::product(terms.into_iter().flatten().collect()))
    }
}

fn parse_term(tok: &str) -> Result<Vec<GroupExpr>> {
    let (base, power) = match tok.rfind('^') {
        Some(i) if !tok[i..].contains(')') => {
            let k: u64 = tok[i + 1..]
                .parse()
                .map_err(|_| Error::parse("group", format!("bad exponent in `{tok}`")))?;
            if k == 0 || k > MAX_POWER {
                return Err(Error::parse(
                    "group",
                    format!("exponent in `{tok}` must be between 1 and {MAX_POWER}"),
                ));
            }
            (&tok[..i], k as usize)
        }
        _ => (tok, 1),
    };
    let atom = parse_atom(base)?;
    Ok(match atom {
        GroupExpr::Abelian(a) => {
            let factors = a
                .factors()
                .iter()
                .flat_map(|f| std::iter::repeat(*f).take(power))
                .collect();
            vec![GroupExpr::Abelian(AbelianDescriptor::new(factors))]
        }
        other => vec![other; power],
    })
}

fn parse_atom(tok: &str) -> Result<GroupExpr> {
    if tok == "1" {
        return Ok(GroupExpr::trivial());
    }
    if let Some(path) = tok.strip_prefix("perm:") {
        if path.is_empty() {
            return Err(Error::parse("group", "empty path after `perm:`"));
        }
        return Ok(GroupExpr::Perm(PathBuf::from(path)));
    }
    if let Some(arg) = tok.strip_prefix("C(").and_then(|r| r.strip_suffix(')')) {
        let n: u64 = arg
            .parse()
            .map_err(|_| Error::parse("group", format!("bad cyclic order in `{tok}`")))?;
        return AbelianDescriptor::cyclic(n)
            .map(GroupExpr::Abelian)
            .map_err(|_| Error::parse("group", format!("`{tok}`: {n} is not a prime power >= 2")));
    }
    NamedGroup::parse_key(tok)
        .map(GroupExpr::Named)
        .map_err(|e| match e {
            Error::UnknownGroup(k) => Error::parse("group", format!("unknown group `{k}`")),
            other => Error::parse("group", other.to_string()),
        })
}

impl FromStr for GroupExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupExpr::parse(s)
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Abelian(a) => write!(f, "{a}"),
            GroupExpr::Named(n) => write!(f, "{n}"),
            GroupExpr::Perm(p) => write!(f, "perm:{}", p.display()),
            GroupExpr::Product(fs) => {
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
        }
    }
}
