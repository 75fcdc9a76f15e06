//! Exact rational and cyclotomic arithmetic.

pub mod cyclotomic;
pub mod numtheory;

pub use cyclotomic::{root_of_unity, Cyclotomic, CyclotomicJson};
pub use numtheory::{binomial, cyclotomic_polynomial, euler_phi, gcd, lcm};

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
