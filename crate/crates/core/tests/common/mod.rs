//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls into the closed forms under test: ratios come from the
//! textbook formula, distributions from enumerating tuples of residues.
#![allow(dead_code)]

use std::path::PathBuf;

use malachite_base::num::arithmetic::traits::Pow;
use malachite_nz::natural::Natural;
use malachite_q::Rational;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

/// Corpus entry: file, order, abelian, nilpotent.
pub const CORPUS: &[(&str, u64, bool, bool)] = &[
    ("s3.gens", 6, false, false),
    ("a4.gens", 12, false, false),
    ("s4.gens", 24, false, false),
    ("a5.gens", 60, false, false),
    ("d5.gens", 10, false, false),
    ("d6.gens", 12, false, false),
    ("q8.gens", 8, false, true),
    ("c3xs3.gens", 18, false, false),
    ("d4xc3.gens", 24, false, true),
    ("c4xc4.gens", 16, true, true),
    ("heis3.gens", 27, false, true),
    ("d4.gens", 8, false, true),
    ("c4.gens", 4, true, true),
    ("d4_reflection.gens", 2, true, true),
];

/// Plain sieve of Eratosthenes.
pub fn sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// `(p^(m+1) - p + 1) / (p^(m+1) - p^m + p^(m-1))`
pub fn ratio_formula(p: u64, m: u32) -> Rational {
    let p = Natural::from(p);
    let pm1 = (&p).pow(m as u64 + 1);
    let num = &pm1 - &p + Natural::from(1u32);
    let den = pm1 - (&p).pow(m as u64) + (&p).pow(m as u64 - 1);
    Rational::from_naturals(num, den)
}

/// Order histogram of `Z_{n_1} x ... x Z_{n_k}` by visiting every tuple.
pub fn tuple_histogram(moduli: &[u64]) -> Vec<(u64, u64)> {
    let mut hist = std::collections::BTreeMap::new();
    let total: u64 = moduli.iter().product();
    for mut code in 0..total {
        let mut order = 1;
        for &n in moduli {
            let x = code % n;
            code /= n;
            order = lcm(order, n / gcd(x, n));
        }
        *hist.entry(order).or_insert(0u64) += 1;
    }
    hist.into_iter().collect()
}

pub fn avg_from_histogram(hist: &[(u64, u64)]) -> Rational {
    let psi: u64 = hist.iter().map(|(d, c)| d * c).sum();
    let n: u64 = hist.iter().map(|(_, c)| c).sum();
    Rational::from_naturals(Natural::from(psi), Natural::from(n))
}

/// `ψ(Z_n)` as a plain sum.
pub fn cyclic_psi_sum(n: u64) -> u64 {
    (0..n).map(|x| n / gcd(x, n)).sum()
}

/// Every multiset of prime powers with product at most `limit`, each as a
/// list of moduli in nonincreasing order.
pub fn abelian_groups_up_to(limit: u64) -> Vec<Vec<u64>> {
    let mut powers: Vec<u64> = Vec::new();
    for p in sieve(limit) {
        let mut q = p;
        while q <= limit {
            powers.push(q);
            q *= p;
        }
    }
    powers.sort_unstable_by(|a, b| b.cmp(a));
    fn extend(
        powers: &[u64],
        start: usize,
        prod: u64,
        limit: u64,
        cur: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        out.push(cur.clone());
        for i in start..powers.len() {
            let q = powers[i];
            if prod * q <= limit {
                cur.push(q);
                extend(powers, i, prod * q, limit, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&powers, 0, 1, limit, &mut Vec::new(), &mut out);
    out
}

/// Text form `C(n_1) x C(n_2) x ...`, or `1`.
pub fn expr_text(moduli: &[u64]) -> String {
    if moduli.is_empty() {
        "1".into()
    } else {
        moduli
            .iter()
            .map(|n| format!("C({n})"))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

/// Balanced product of rationals.
pub fn product_tree(values: &[Rational]) -> Rational {
    match values.len() {
        0 => Rational::from(1u32),
        1 => values[0].clone(),
        n => product_tree(&values[..n / 2]) * product_tree(&values[n / 2..]),
    }
}
