use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::characters::CharacterTable;
use super::class_function::{inner_product, ClassFunction};
use super::classfns::theta;
use super::partition::{partitions, Partition};
use crate::arith::numtheory::{binomial, factorial, gcd};
use crate::error::{Error, Result};

/// Default bound on `α` in [`find_min_alpha`].
pub const DEFAULT_ALPHA_CAP: u32 = 12;

/// Number of semistandard tableaux of shape `λ` and content `μ`.
pub fn kostka(lambda: &Partition, mu: &Partition) -> u64 {
    if lambda.n() != mu.n() {
        return 0;
    }
    kostka_rec(lambda.parts().to_vec(), mu.parts(), &mut HashMap::new())
}

// Peels off the cells holding the largest letter; they form a horizontal strip.
fn kostka_rec(
    lambda: Vec<u32>,
    content: &[u32],
    memo: &mut HashMap<(Vec<u32>, usize), u64>,
) -> u64 {
    let Some((&r, rest)) = content.split_last() else {
        return lambda.iter().all(|&p| p == 0) as u64;
    };
    if lambda.iter().filter(|&&p| p > 0).count() > content.len() {
        return 0;
    }
    let key = (lambda.clone(), content.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0;
    let mut nu = lambda.clone();
    strips(&lambda, 0, r, &mut nu, &mut |nu| {
        let mut nu = nu.to_vec();
        while nu.last() == Some(&0) {
            nu.pop();
        }
        total += kostka_rec(nu, rest, memo);
    });
    memo.insert(key, total);
    total
}

/// Calls `f(ν)` for every `ν` with `λ/ν` a horizontal strip of `left` cells
/// in rows `i..`: `λ_{i+1} ≤ ν_i ≤ λ_i`.
fn strips(lambda: &[u32], i: usize, left: u32, nu: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if i == lambda.len() {
        if left == 0 {
            f(nu);
        }
        return;
    }
    let floor = lambda.get(i + 1).copied().unwrap_or(0);
    let room = lambda[i] - floor;
    for take in 0..=room.min(left) {
        nu[i] = lambda[i] - take;
        strips(lambda, i + 1, left - take, nu, f);
    }
    nu[i] = lambda[i];
}

/// Number of `S_n`-orbits on `A^n`, `|A| = ℓ`, of shape `μ`:
/// `ℓ(ℓ−1)⋯(ℓ−k+1) / Π_i d_i!` with `k` parts and `d_i` parts equal to `i`.
pub fn c_mu(mu: &Partition, l: u64) -> BigUint {
    let k = mu.len() as u64;
    if k > l {
        return BigUint::zero();
    }
    let falling: BigUint = (0..k).map(|j| BigUint::from(l - j)).product();
    let denom: BigUint = mu
        .multiplicities()
        .into_iter()
        .map(|(_, d)| factorial(d as u64))
        .product();
    debug_assert!((&falling % &denom).is_zero());
    falling / denom
}

fn as_count(c: &crate::arith::Cyclotomic, what: &str) -> Result<BigUint> {
    c.to_integer()
        .and_then(|v| v.to_biguint())
        .ok_or_else(|| Error::InternalMismatch(format!("{what} is {c}, not a count")))
}

/// Multiplicity of `V_λ` in `C[A^n]`, by Young's rule `Σ_μ c_μ(ℓ) K_{λμ}`,
/// checked against `⟨χ^λ, θ_{n,ℓ}⟩`.
pub fn schur_multiplicity_theta(lambda: &Partition, l: u64) -> Result<BigUint> {
    let n = lambda.n();
    if n == 0 || l == 0 {
        return Err(Error::invalid("need n >= 1 and l >= 1"));
    }
    let young: BigUint = partitions(n)
        .iter()
        .map(|mu| c_mu(mu, l) * BigUint::from(kostka(lambda, mu)))
        .sum();
    let chars = as_count(
        &inner_product(&ClassFunction::irreducible(lambda), &theta(n, l)?),
        "character inner product",
    )?;
    if young != chars {
        return Err(Error::InternalMismatch(format!(
            "multiplicity of {lambda}: Young's rule gives {young}, characters give {chars}"
        )));
    }
    Ok(young)
}

fn checked_against(closed: BigUint, lambda: &Partition, l: u64) -> Result<BigUint> {
    let t = CharacterTable::cached(lambda.n());
    let irr = ClassFunction::from_fn(t.n(), |mu| {
        crate::arith::Cyclotomic::from_int(t.value(lambda, mu))
    });
    let via = as_count(
        &inner_product(&theta(t.n(), l)?, &irr),
        "character inner product",
    )?;
    if via != closed {
        return Err(Error::InternalMismatch(format!(
            "multiplicity of {lambda} in theta: closed form {closed}, characters {via}"
        )));
    }
    Ok(closed)
}

/// Multiplicity of the trivial representation in `C[A^n]`: `binomial(n+ℓ−1, n)`.
pub fn trivial_multiplicity(n: u32, l: u64) -> Result<BigUint> {
    if n == 0 || l == 0 {
        return Err(Error::invalid("need n >= 1 and l >= 1"));
    }
    checked_against(binomial(n as u64 + l - 1, n as u64), &Partition::row(n), l)
}

/// Multiplicity of the sign representation in `C[A^n]`: `binomial(ℓ, n)`.
pub fn sign_multiplicity(n: u32, l: u64) -> Result<BigUint> {
    if n == 0 || l == 0 {
        return Err(Error::invalid("need n >= 1 and l >= 1"));
    }
    checked_against(binomial(l, n as u64), &Partition::column(n), l)
}

/// `binomial(n + L − 1, n) mod L` with big integers throughout.
fn multiset_count_mod(n: u32, big_l: &BigUint) -> BigUint {
    let mut num = BigUint::one();
    for i in 1..=n {
        num *= big_l - 1u32 + i;
    }
    (num / factorial(n as u64)).mod_floor(big_l)
}

/// Smallest `α ≥ 1` with `binomial(n + ℓ^α − 1, n) ≢ 0 (mod ℓ^α)`, searching
/// `α ≤ cap`.
pub fn find_min_alpha(n: u32, l: u64, cap: u32) -> Result<u32> {
    if n == 0 || l < 2 {
        return Err(Error::invalid("need n >= 1 and l >= 2"));
    }
    if gcd(n as u64, l) == 1 {
        return Err(Error::invalid(format!("gcd({n}, {l}) = 1")));
    }
    if cap == 0 {
        return Err(Error::invalid("alpha cap must be positive"));
    }
    let base = BigUint::from(l);
    let mut big_l = BigUint::one();
    for alpha in 1..=cap {
        big_l *= &base;
        if !multiset_count_mod(n, &big_l).is_zero() {
            return Ok(alpha);
        }
    }
    Err(Error::SearchCapExceeded { cap: cap as u64 })
}

/// `binomial(n + ℓ^α − 1, n)` itself, exposed for reporting.
pub fn multiset_count(n: u32, l: u64, alpha: u32) -> BigInt {
    let big_l = num_traits::pow(BigUint::from(l), alpha as usize);
    let mut num = BigUint::one();
    for i in 1..=n {
        num *= &big_l - 1u32 + i;
    }
    BigInt::from(num / factorial(n as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    /// Brute-force SSYT count: fill cells row by row.
    fn ssyt_count(shape: &[u32], content: &[u32]) -> u64 {
        let cells: Vec<(usize, usize)> = shape
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
            .collect();
        let mut grid = vec![vec![0u32; shape.first().copied().unwrap_or(0) as usize]; shape.len()];
        let mut left = content.to_vec();
        fn go(
            i: usize,
            cells: &[(usize, usize)],
            grid: &mut Vec<Vec<u32>>,
            left: &mut Vec<u32>,
        ) -> u64 {
            if i == cells.len() {
                return 1;
            }
            let (r, c) = cells[i];
            let mut total = 0;
            for v in 1..=left.len() as u32 {
                if left[v as usize - 1] == 0 {
                    continue;
                }
                if c > 0 && grid[r][c - 1] > v {
                    continue;
                }
                if r > 0 && grid[r - 1][c] >= v {
                    continue;
                }
                grid[r][c] = v;
                left[v as usize - 1] -= 1;
                total += go(i + 1, cells, grid, left);
                left[v as usize - 1] += 1;
            }
            total
        }
        go(0, &cells, &mut grid, &mut left)
    }

    #[test]
    fn kostka_examples() {
        assert_eq!(kostka(&p(&[2, 1]), &p(&[1, 1, 1])), 2);
        assert_eq!(kostka(&p(&[3]), &p(&[2, 1])), 1);
        assert_eq!(kostka(&p(&[2, 1]), &p(&[3])), 0);
        assert_eq!(kostka(&p(&[3, 2]), &p(&[2, 2, 1])), 2);
    }

    #[test]
    fn kostka_matches_tableau_enumeration() {
        for n in 1..=7 {
            for l in partitions(n) {
                for m in partitions(n) {
                    assert_eq!(
                        kostka(&l, &m),
                        ssyt_count(l.parts(), m.parts()),
                        "λ={l} μ={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn kostka_first_column_counts_standard_tableaux() {
        for n in 1..=7 {
            let t = CharacterTable::cached(n);
            for l in partitions(n) {
                let dim = t.value(&l, &Partition::column(n));
                assert_eq!(kostka(&l, &Partition::column(n)) as i64, dim);
            }
        }
    }

    #[test]
    fn c_mu_counts_orbits() {
        assert_eq!(c_mu(&p(&[1, 1, 1]), 3), BigUint::from(1u32));
        assert_eq!(c_mu(&p(&[2, 1]), 2), BigUint::from(2u32));
        assert_eq!(c_mu(&p(&[1, 1, 1]), 2), BigUint::zero());
        for n in 1..=6u32 {
            for l in 1..=5u64 {
                let total: BigUint = partitions(n).iter().map(|m| c_mu(m, l)).sum();
                assert_eq!(total, binomial(n as u64 + l - 1, n as u64));
            }
        }
    }

    #[test]
    fn young_rule_agrees_with_characters() {
        for n in 1..=6 {
            for l in 1..=4 {
                for lam in partitions(n) {
                    schur_multiplicity_theta(&lam, l).unwrap();
                }
            }
        }
    }

    #[test]
    fn trivial_and_sign() {
        assert_eq!(trivial_multiplicity(2, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(sign_multiplicity(2, 2).unwrap(), BigUint::from(1u32));
        assert_eq!(trivial_multiplicity(3, 2).unwrap(), BigUint::from(4u32));
        assert_eq!(sign_multiplicity(3, 2).unwrap(), BigUint::zero());
        for l in 1..=6 {
            assert_eq!(trivial_multiplicity(1, l).unwrap(), BigUint::from(l));
            assert_eq!(sign_multiplicity(1, l).unwrap(), BigUint::from(l));
        }
    }

    #[test]
    fn alpha_search() {
        assert_eq!(find_min_alpha(2, 2, 12), Ok(1));
        let a = find_min_alpha(4, 2, 12).unwrap();
        assert!(!multiset_count_mod(4, &BigUint::from(2u64.pow(a))).is_zero());
        for b in 1..a {
            assert!(multiset_count_mod(4, &BigUint::from(2u64.pow(b))).is_zero());
        }
        assert!(find_min_alpha(6, 4, 12).is_ok());
        assert!(find_min_alpha(3, 2, 12).is_err());
        assert_eq!(
            find_min_alpha(6, 4, 1),
            Err(Error::SearchCapExceeded { cap: 1 })
        );
        assert_eq!(multiset_count(2, 2, 1), BigInt::from(3));
    }
}
