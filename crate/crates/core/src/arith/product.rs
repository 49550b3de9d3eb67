use malachite_base::num::basic::traits::One;
use malachite_nz::natural::Natural;
use malachite_q::Rational;

use super::BigRat;

/// Balanced product of a slice of naturals. Multiplying operands of similar
/// size keeps the fast multiplication algorithms busy; a left fold over many
/// small factors is quadratic.
pub fn product_tree(values: &[Natural]) -> Natural {
    match values.len() {
        0 => Natural::ONE,
        1 => values[0].clone(),
        2 => &values[0] * &values[1],
        n => {
            let (lo, hi) = values.split_at(n / 2);
            product_tree(lo) * product_tree(hi)
        }
    }
}

/// A positive fraction that is deliberately *not* kept in lowest terms.
///
/// Used to accumulate long products where a gcd after every step would
/// dominate the cost. Convert with [`Fraction::reduce`] once at the end.
#[derive(Clone, Debug)]
pub struct Fraction {
    pub num: Natural,
    pub den: Natural,
}

impl Fraction {
    pub fn one() -> Self {
        Fraction {
            num: Natural::ONE,
            den: Natural::ONE,
        }
    }

    pub fn new(num: Natural, den: Natural) -> Self {
        assert!(den != 0u32, "zero denominator");
        Fraction { num, den }
    }

    pub fn from_rat(q: &BigRat) -> Self {
        assert!(
            *q.as_rational() >= 0u32,
            "Fraction holds non-negative values"
        );
        let (num, den) = q.as_rational().to_numerator_and_denominator();
        Fraction { num, den }
    }

    /// Product of many fractions via two product trees.
    pub fn product(parts: &[Fraction]) -> Fraction {
        let nums: Vec<Natural> = parts.iter().map(|f| f.num.clone()).collect();
        let dens: Vec<Natural> = parts.iter().map(|f| f.den.clone()).collect();
        Fraction {
            num: product_tree(&nums),
            den: product_tree(&dens),
        }
    }

    pub fn mul(&self, other: &Fraction) -> Fraction {
        Fraction {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    pub fn div(&self, other: &Fraction) -> Fraction {
        assert!(other.num != 0u32, "division by zero");
        Fraction {
            num: &self.num * &other.den,
            den: &self.den * &other.num,
        }
    }

    pub fn recip(&self) -> Fraction {
        Fraction::new(self.den.clone(), self.num.clone())
    }

    /// `self <= other`, by cross-multiplication.
    pub fn le(&self, other: &Fraction) -> bool {
        &self.num * &other.den <= &other.num * &self.den
    }

    /// Value equality with a reduced rational, by cross-multiplication.
    pub fn equals(&self, q: &BigRat) -> bool {
        if *q < 0u64 {
            return false;
        }
        &self.num * q.denominator() == &self.den * q.numerator_abs()
    }

    pub fn reduce(self) -> BigRat {
        BigRat::from_rational(Rational::from_naturals(self.num, self.den))
    }
}
