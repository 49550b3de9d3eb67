use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::{Abs, Pow, Reciprocal};
use malachite_base::num::basic::traits::{One, Zero};
use malachite_base::num::conversion::traits::RoundingFrom;
use malachite_base::num::logic::traits::SignificantBits;
use malachite_base::rounding_modes::RoundingMode;
use malachite_nz::integer::Integer;
use malachite_nz::natural::Natural;
use malachite_q::Rational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

use super::product::product_tree;

/// Largest decimal exponent accepted by the parser (`1e-4` style literals).
const MAX_DECIMAL_EXPONENT: u64 = 100_000;

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Prints and parses as `num/den` in decimal. Parsing also accepts bare
/// integers and decimal literals such as `0.37` or `1e-4`, which are read
/// exactly (`37/100`, `1/10000`), never through a float.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigRat(Rational);

impl BigRat {
    pub fn zero() -> Self {
        BigRat(Rational::ZERO)
    }

    pub fn one() -> Self {
        BigRat(Rational::ONE)
    }

    pub fn from_rational(q: Rational) -> Self {
        BigRat(q)
    }

    pub fn as_rational(&self) -> &Rational {
        &self.0
    }

    pub fn from_naturals(num: Natural, den: Natural) -> Self {
        assert!(den != 0u32, "zero denominator");
        BigRat(Rational::from_naturals(num, den))
    }

    pub fn from_integer(n: Integer) -> Self {
        BigRat(Rational::from(n))
    }

    pub fn from_natural(n: Natural) -> Self {
        BigRat(Rational::from(n))
    }

    pub fn from_u64(n: u64) -> Self {
        BigRat(Rational::from(n))
    }

    /// `num/den`; panics when `den == 0`.
    pub fn ratio(num: u64, den: u64) -> Self {
        Self::from_naturals(Natural::from(num), Natural::from(den))
    }

    pub fn numerator(&self) -> Integer {
        Integer::from_sign_and_abs(*self >= BigRat::zero(), self.0.to_numerator())
    }

    pub fn numerator_abs(&self) -> &Natural {
        self.0.numerator_ref()
    }

    pub fn denominator(&self) -> &Natural {
        self.0.denominator_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.0 == 0u32
    }

    pub fn is_positive(&self) -> bool {
        self.0 > 0u32
    }

    pub fn is_integer(&self) -> bool {
        *self.0.denominator_ref() == 1u32
    }

    pub fn abs(&self) -> Self {
        BigRat((&self.0).abs())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(BigRat((&self.0).reciprocal()))
        }
    }

    pub fn pow(&self, exp: u64) -> Self {
        BigRat((&self.0).pow(exp))
    }

    /// Product of many rationals: numerators and denominators are multiplied
    /// in two balanced trees and reduced once.
    pub fn product<'a, I>(factors: I) -> Self
    where
        I: IntoIterator<Item = &'a BigRat>,
    {
        let mut negative = false;
        let mut nums = Vec::new();
        let mut dens = Vec::new();
        for f in factors {
            if f.is_zero() {
                return BigRat::zero();
            }
            negative ^= f.0 < 0u32;
            nums.push(f.0.numerator_ref().clone());
            dens.push(f.0.denominator_ref().clone());
        }
        BigRat(Rational::from_sign_and_naturals(
            !negative,
            product_tree(&nums),
            product_tree(&dens),
        ))
    }

    /// Nearest `f64`, ties to even. For display and diagnostics only; nothing
    /// that certifies a result goes through this.
    pub fn to_f64(&self) -> Result<f64> {
        let (x, _) = f64::rounding_from(&self.0, RoundingMode::Nearest);
        if x.is_finite() {
            Ok(x)
        } else {
            Err(Error::Overflow(self.abbreviated()))
        }
    }

    /// Like [`to_f64`](Self::to_f64) but saturating to `±inf`.
    pub fn to_f64_lossy(&self) -> f64 {
        f64::rounding_from(&self.0, RoundingMode::Nearest).0
    }

    /// Decimal rendering with `digits` significant digits, rounded half away
    /// from zero, computed exactly. Plain notation for moderate exponents,
    /// scientific (`4.16493127863390e-4`) otherwise.
    pub fn to_sig_decimal(&self, digits: u32) -> String {
        assert!(digits >= 1);
        if self.is_zero() {
            return format!("{:.*}", (digits - 1) as usize, 0.0);
        }
        let sign = if self.0 < 0u32 { "-" } else { "" };
        let q = (&self.0).abs();
        let ten = Rational::from(10u32);
        // Estimate floor(log10 q) from bit lengths, then settle exactly.
        let bits = q.numerator_ref().significant_bits() as i64
            - q.denominator_ref().significant_bits() as i64;
        let mut k = (bits as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let pow10 = |e: i64| -> Rational {
            if e >= 0 {
                (&ten).pow(e as u64)
            } else {
                (&ten).pow((-e) as u64).reciprocal()
            }
        };
        while q < pow10(k) {
            k -= 1;
        }
        while q >= pow10(k + 1) {
            k += 1;
        }
        let scale = digits as i64 - 1 - k;
        let scaled = &q * pow10(scale);
        let (n, d) = scaled.into_numerator_and_denominator();
        let twice = Natural::from(2u32) * &n + &d;
        let mut mantissa = twice / (Natural::from(2u32) * d);
        if mantissa >= Natural::from(10u32).pow(digits as u64) {
            mantissa /= Natural::from(10u32);
            k += 1;
        }
        let m = mantissa.to_string();
        debug_assert_eq!(m.len(), digits as usize);
        if (-5..15).contains(&k) {
            if k >= 0 {
                let int_len = (k + 1) as usize;
                if int_len >= m.len() {
                    format!("{sign}{m}{}", "0".repeat(int_len - m.len()))
                } else {
                    format!("{sign}{}.{}", &m[..int_len], &m[int_len..])
                }
            } else {
                format!("{sign}0.{}{m}", "0".repeat((-k - 1) as usize))
            }
        } else if m.len() == 1 {
            format!("{sign}{m}e{k}")
        } else {
            format!("{sign}{}.{}e{k}", &m[..1], &m[1..])
        }
    }

    /// The exact `num/den` text, cut down to a prefix and a length when it
    /// runs past 64 characters.
    pub fn abbreviated(&self) -> String {
        let s = self.to_string();
        if s.len() > 64 {
            format!("{}…({} chars)", &s[..32], s.len())
        } else {
            s
        }
    }

    /// Parses with a field name attached to any error.
    pub fn parse_field(field: &str, text: &str) -> Result<Self> {
        text.parse::<BigRat>()
            .map_err(|e| Error::parse(field, format!("`{}`: {e}", truncate(text))))
    }
}

fn truncate(s: &str) -> &str {
    match s.char_indices().nth(40) {
        Some((i, _)) => &s[..i],
        None => s,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRatError(String);

impl fmt::Display for ParseRatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseRatError {}

fn parse_natural(digits: &str) -> std::result::Result<Natural, ParseRatError> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRatError(format!(
            "`{digits}` is not a decimal integer"
        )));
    }
    Natural::from_str(digits).map_err(|_| ParseRatError(format!("bad integer `{digits}`")))
}

fn parse_decimal(body: &str) -> std::result::Result<Rational, ParseRatError> {
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], Some(&body[i + 1..])),
        None => (body, None),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(ParseRatError("missing digits".into()));
    }
    for part in [int_part, frac_part] {
        if !part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseRatError(format!("unexpected character in `{body}`")));
        }
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from(parse_natural(&digits)?);
    let mut exp10: i64 = -(frac_part.len() as i64);
    if let Some(e) = exponent {
        let (neg, mag) = match e.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, e.strip_prefix('+').unwrap_or(e)),
        };
        let mag: u64 = mag
            .parse()
            .map_err(|_| ParseRatError(format!("bad exponent `{e}`")))?;
        if mag > MAX_DECIMAL_EXPONENT {
            return Err(ParseRatError(format!("exponent `{e}` out of range")));
        }
        exp10 += if neg { -(mag as i64) } else { mag as i64 };
    }
    let scale = Rational::from(Natural::from(10u32).pow(exp10.unsigned_abs()));
    if exp10 >= 0 {
        value *= scale;
    } else {
        value /= scale;
    }
    Ok(value)
}

impl FromStr for BigRat {
    type Err = ParseRatError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        if body.is_empty() {
            return Err(ParseRatError("empty number".into()));
        }
        let magnitude = if let Some((n, d)) = body.split_once('/') {
            let n = parse_natural(n.trim())?;
            let d = parse_natural(d.trim())?;
            if d == 0u32 {
                return Err(ParseRatError("zero denominator".into()));
            }
            Rational::from_naturals(n, d)
        } else {
            parse_decimal(body)?
        };
        Ok(BigRat(if negative { -magnitude } else { magnitude }))
    }
}

impl fmt::Display for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 < 0u32 {
            f.write_str("-")?;
        }
        write!(f, "{}/{}", self.0.numerator_ref(), self.0.denominator_ref())
    }
}

impl fmt::Debug for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigRat({})", self.abbreviated())
    }
}

impl Serialize for BigRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BigRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<u64> for BigRat {
    fn from(n: u64) -> Self {
        BigRat::from_u64(n)
    }
}

impl From<Natural> for BigRat {
    fn from(n: Natural) -> Self {
        BigRat::from_natural(n)
    }
}

impl PartialEq<u64> for BigRat {
    fn eq(&self, other: &u64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<u64> for BigRat {
    fn partial_cmp(&self, other: &u64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&BigRat> for &BigRat {
            type Output = BigRat;
            fn $method(self, rhs: &BigRat) -> BigRat {
                BigRat(&self.0 $op &rhs.0)
            }
        }
        impl $trait<BigRat> for BigRat {
            type Output = BigRat;
            fn $method(self, rhs: BigRat) -> BigRat {
                BigRat(self.0 $op rhs.0)
            }
        }
        impl $trait<&BigRat> for BigRat {
            type Output = BigRat;
            fn $method(self, rhs: &BigRat) -> BigRat {
                BigRat(self.0 $op &rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl Neg for BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat(-self.0)
    }
}

impl Neg for &BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat(-&self.0)
    }
}
