//! Exact arithmetic: canonical big rationals, product trees, small-integer
//! number theory and the prime stream.

mod numtheory;
mod primes;
mod product;
mod rational;

pub use numtheory::{gcd_u64, is_prime_u64, prime_factors_u64, prime_power_u64};
pub use primes::{nth_prime, PrimeStream, DEFAULT_PRIME_CAP};
pub use product::{product_tree, Fraction};
pub use rational::BigRat;
