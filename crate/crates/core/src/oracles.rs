//! Brute-force checks that share no code path with the closed formulas:
//! enumeration of fixed points and orbits, the classical Lefschetz fixed-locus
//! count, and a search for vanishing sums of roots of unity.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::numtheory::{binomial, cyclotomic_polynomial_i64, gcd};
use crate::arith::Cyclotomic;
use crate::error::{Error, Result};
use crate::lefschetz::{primitive_dimension, HypersurfaceAction};
use crate::symgroup::{partitions, permutation_of_type, AbelianGroupSpec, Partition};

pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

fn check_cap(needed: Option<u64>, cap: u64) -> Result<u64> {
    match needed {
        Some(n) if n <= cap => Ok(n),
        n => Err(Error::CapExceeded {
            cap,
            needed: n.unwrap_or(u64::MAX),
        }),
    }
}

/// Calls `f` on every tuple in `Z/r_0 × ⋯ × Z/r_{k−1}` (odometer order).
fn for_each_tuple(radices: &[u64], mut f: impl FnMut(&[u64])) {
    let mut cur = vec![0u64; radices.len()];
    loop {
        f(&cur);
        let mut i = 0;
        loop {
            if i == cur.len() {
                return;
            }
            cur[i] += 1;
            if cur[i] < radices[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Counts points of `M = {a ∈ A^n : Σ a_i = 0}` fixed by a permutation of
/// cycle type `μ`, by listing all of `A^n`.
pub fn count_fixed_points_m(mu: &Partition, a: &AbelianGroupSpec, cap: u64) -> Result<u64> {
    let n = mu.n() as usize;
    if n == 0 {
        return Err(Error::invalid("cycle type must be nonempty"));
    }
    let orders = a.cyclic_orders();
    let l = a.order();
    check_cap(l.checked_pow(n as u32), cap)?;
    let sigma = permutation_of_type(mu);
    // coordinate (i, j) = j-th cyclic component of a_i
    let radices: Vec<u64> = (0..n).flat_map(|_| orders.iter().copied()).collect();
    let k = orders.len();
    let mut count = 0u64;
    for_each_tuple(&radices, |t| {
        let in_m = (0..k).all(|j| (0..n).map(|i| t[i * k + j]).sum::<u64>() % orders[j] == 0);
        let fixed = (0..n).all(|i| t[sigma[i] * k..][..k] == t[i * k..][..k]);
        count += (in_m && fixed) as u64;
    });
    Ok(count)
}

/// `S_n`-orbits on `(Z/ℓ)^n`, sorted by shape. Every partition of `n`
/// appears, with 0 where no orbit has that shape.
pub fn count_orbits_by_shape(n: u32, l: u64, cap: u64) -> Result<BTreeMap<Partition, u64>> {
    if n == 0 || l == 0 {
        return Err(Error::invalid("need n >= 1 and l >= 1"));
    }
    check_cap(l.checked_pow(n), cap)?;
    let mut out: BTreeMap<Partition, u64> = partitions(n).into_iter().map(|p| (p, 0)).collect();
    for_each_tuple(&vec![l; n as usize], |t| {
        // one representative per orbit: the weakly increasing tuple
        if t.windows(2).any(|w| w[0] > w[1]) {
            return;
        }
        let mut counts: BTreeMap<u64, u32> = BTreeMap::new();
        for &x in t {
            *counts.entry(x).or_insert(0) += 1;
        }
        *out.get_mut(&Partition::new(counts.into_values().collect()))
            .expect("shape is a partition of n") += 1;
    });
    Ok(out)
}

/// Primitive middle trace from the topological Lefschetz formula: sum the
/// Euler characteristics of the fixed components, remove the `n+1` powers of
/// the hyperplane class and fix the sign.
pub fn euler_fixed_locus_trace(a: &HypersurfaceAction) -> Cyclotomic {
    let s = a.spectrum();
    let d = a.degree() as u64;
    let n = a.n();
    let mut total = BigInt::from(0);
    for (k, m) in s.iter() {
        let m_big = BigInt::from(m);
        if (k * d) % s.conductor() != 0 {
            // F vanishes on the whole eigenspace
            total += m_big;
        } else if m >= 2 {
            // smooth degree-d hypersurface in P^{m-1}
            let prim = primitive_dimension(m - 2, d);
            total += m_big - 1 + if m % 2 == 0 { prim } else { -prim };
        }
    }
    let v = total - BigInt::from(n + 1);
    Cyclotomic::from_bigint(if n % 2 == 0 { v } else { -v })
}

/// `n+3` roots of unity `ζ_{d−1}^{k_i}` summing to zero; coordinates of a
/// singular point of the Fermat section. Checked exactly on construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityCertificate {
    order: u64,
    exponents: Vec<u64>,
}

impl SingularityCertificate {
    pub fn new(order: u64, exponents: Vec<u64>) -> Result<Self> {
        if order == 0 || exponents.is_empty() {
            return Err(Error::invalid(
                "certificate needs a positive order and terms",
            ));
        }
        let exponents: Vec<u64> = exponents.into_iter().map(|k| k % order).collect();
        let sum: Cyclotomic = exponents
            .iter()
            .map(|&k| Cyclotomic::root_of_unity(order, k as i64))
            .sum();
        if !sum.is_zero() {
            return Err(Error::invalid(format!(
                "roots of unity with exponents {exponents:?} mod {order} sum to {sum}, not 0"
            )));
        }
        Ok(SingularityCertificate { order, exponents })
    }

    /// The root-of-unity order `d − 1`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }
}

/// Searches for `n+3` roots of unity of order `d−1` (with repetition) whose
/// sum vanishes, over multisets of exponents. `None` means the section of the
/// Fermat hypersurface by `Σ x_i = 0` is smooth.
pub fn fermat_section_singular(n: u32, d: u32, cap: u64) -> Result<Option<SingularityCertificate>> {
    if n < 1 || d < 2 {
        return Err(Error::invalid("need n >= 1 and d >= 2"));
    }
    let q = (d - 1) as u64;
    let terms = n as u64 + 3;
    let states = binomial(terms + q - 1, terms);
    check_cap(u64::try_from(&states).ok(), cap)?;
    let phi = cyclotomic_polynomial_i64(q);
    let deg = phi.len() - 1;
    // x^k mod Φ_q for k < q, as integer vectors of length deg
    let powers: Vec<Vec<i64>> = (0..q as usize)
        .map(|k| {
            let mut v = vec![0i64; k.max(deg) + 1];
            v[k] = 1;
            for top in (deg..v.len()).rev() {
                let c = v[top];
                if c != 0 {
                    for (j, &p) in phi.iter().enumerate() {
                        v[top - deg + j] -= c * p;
                    }
                }
            }
            v.truncate(deg);
            v
        })
        .collect();
    let mut counts = vec![0u64; q as usize];
    let found = search_multisets(&mut counts, 0, terms, &mut |c| {
        (0..deg).all(|j| {
            c.iter()
                .zip(&powers)
                .map(|(&m, p)| m as i64 * p[j])
                .sum::<i64>()
                == 0
        })
    });
    if !found {
        return Ok(None);
    }
    let exponents = counts
        .iter()
        .enumerate()
        .flat_map(|(k, &m)| std::iter::repeat_n(k as u64, m as usize))
        .collect();
    SingularityCertificate::new(q, exponents).map(Some)
}

/// Fills `counts[i..]` with every composition of `left`; stops at the first
/// one accepted by `test`, leaving it in `counts`.
fn search_multisets(
    counts: &mut [u64],
    i: usize,
    left: u64,
    test: &mut dyn FnMut(&[u64]) -> bool,
) -> bool {
    if i + 1 == counts.len() {
        counts[i] = left;
        return test(counts);
    }
    for take in (0..=left).rev() {
        counts[i] = take;
        if search_multisets(counts, i + 1, left - take, test) {
            return true;
        }
    }
    counts[i] = 0;
    false
}

/// Whether a smooth `S_{n+3}`-stable hypersurface of degree `d` in the
/// standard representation exists: `gcd(n+3, d−1) = 1`.
pub fn exists_smooth_symmetric(n: u32, d: u32) -> bool {
    gcd(n as u64 + 3, (d as u64).saturating_sub(1)) == 1
}

/// Uniform record for the oracle subcommands.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub claim: String,
    pub formula_value: serde_json::Value,
    pub oracle_value: serde_json::Value,
    pub agree: bool,
    pub certificate: Option<serde_json::Value>,
}
