//! Small number-theoretic helpers shared by every other module.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Distinct prime factors of `n`, increasing.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(e: u64) -> u64 {
    assert!(e >= 1, "euler_phi is defined for positive integers");
    prime_factors(e)
        .into_iter()
        .fold(e, |acc, p| acc / p * (p - 1))
}

/// Returns `Some((p, k))` when `n = p^k` for a prime `p` and `k >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let ps = prime_factors(n);
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0];
    let (mut m, mut k) = (n, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    Some((p, k))
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Integer polynomial, coefficients in increasing degree.
pub type IntPoly = Vec<BigInt>;

fn poly_exact_div(num: &[BigInt], den: &[BigInt]) -> IntPoly {
    // den is monic; the division is exact for the cyclotomic recursion.
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    if rem.len() < den.len() {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// The `n`-th cyclotomic polynomial, obtained by dividing `x^n - 1` by
/// every `Φ_e` with `e | n`, `e < n`.
pub fn cyclotomic_polynomial(n: u64) -> IntPoly {
    assert!(n >= 1);
    let mut table: Vec<(u64, IntPoly)> = Vec::new();
    for e in divisors(n) {
        let mut p = vec![BigInt::zero(); e as usize + 1];
        p[0] = -BigInt::one();
        p[e as usize] = BigInt::one();
        for (f, phi_f) in &table {
            if e % f == 0 {
                p = poly_exact_div(&p, phi_f);
            }
        }
        table.push((e, p));
    }
    table.pop().unwrap().1
}

/// Same as [`cyclotomic_polynomial`] with machine-word coefficients.
pub(crate) fn cyclotomic_polynomial_i64(n: u64) -> Vec<i64> {
    cyclotomic_polynomial(n)
        .into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> IntPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn totient_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(6), 2);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(23), 22);
        for n in 1..60u64 {
            let brute = (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64;
            assert_eq!(euler_phi(n), brute, "n = {n}");
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(3, 2), BigUint::from(3u32));
        assert_eq!(binomial(2, 3), BigUint::zero());
        assert_eq!(binomial(10, 0), BigUint::one());
        assert_eq!(binomial(52, 5), BigUint::from(2_598_960u32));
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        // first cyclotomic polynomial with a coefficient outside {-1, 0, 1}
        let p105 = cyclotomic_polynomial(105);
        assert_eq!(p105.len(), 49);
        assert!(p105.contains(&BigInt::from(-2)));
    }

    #[test]
    fn cyclotomic_divides_x_n_minus_one() {
        for n in 1..=30u64 {
            let phi = cyclotomic_polynomial(n);
            assert_eq!(phi.len() as u64 - 1, euler_phi(n));
            let mut target = vec![BigInt::zero(); n as usize + 1];
            target[0] = -BigInt::one();
            target[n as usize] = BigInt::one();
            let q = poly_exact_div(&target, &phi);
            // multiply back
            let mut prod = vec![BigInt::zero(); q.len() + phi.len() - 1];
            for (i, a) in q.iter().enumerate() {
                for (j, b) in phi.iter().enumerate() {
                    prod[i + j] += a * b;
                }
            }
            assert_eq!(prod, target, "n = {n}");
        }
    }

    #[test]
    fn divisor_and_prime_helpers() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }
}
