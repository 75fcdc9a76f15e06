use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{pow, Zero};
use serde::{Deserialize, Serialize};

use super::class_function::ClassFunction;
use super::partition::{d_of, m_e, m_prime_e, Partition};
use crate::arith::numtheory::{divisors, euler_phi, gcd, lcm};
use crate::arith::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::lefschetz::Spectrum;

/// Spectrum of the permutation matrix of cycle type `μ`: each cycle of
/// length `p` contributes every `p`-th root of unity once.
pub fn permutation_spectrum(mu: &Partition) -> Result<Spectrum> {
    Spectrum::new(conductor_of(mu)?, permutation_entries(mu))
}

/// Same with one copy of the eigenvalue 1 removed (the standard
/// representation on `Σ x_i = 0`).
pub fn reduced_permutation_spectrum(mu: &Partition) -> Result<Spectrum> {
    let mut m: BTreeMap<i64, u32> = BTreeMap::new();
    for (k, c) in permutation_entries(mu) {
        *m.entry(k).or_insert(0) += c;
    }
    *m.get_mut(&0).expect("every cycle fixes a vector") -= 1;
    Spectrum::new(conductor_of(mu)?, m)
}

fn conductor_of(mu: &Partition) -> Result<u64> {
    if mu.is_empty() {
        return Err(Error::invalid("cycle type must be nonempty"));
    }
    Ok(mu.parts().iter().fold(1, |a, &p| lcm(a, p as u64)))
}

fn permutation_entries(mu: &Partition) -> Vec<(i64, u32)> {
    let n = mu.parts().iter().fold(1u64, |a, &p| lcm(a, p as u64)) as i64;
    mu.parts()
        .iter()
        .flat_map(|&p| (0..p as i64).map(move |j| (j * (n / p as i64), 1)))
        .collect()
}

fn sign_pow(n: u32) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `((−1)^n/d) Σ_{e|d} φ(e) (1−d)^{count(e)}`, rejected unless integral.
fn divisor_sum(
    mu: &Partition,
    n: u32,
    d: u32,
    count: impl Fn(&Partition, u32) -> u32,
) -> Result<Cyclotomic> {
    let base = BigInt::from(1 - d as i64);
    let sum: BigInt = divisors(d as u64)
        .into_iter()
        .map(|e| BigInt::from(euler_phi(e)) * pow(base.clone(), count(mu, e as u32) as usize))
        .sum();
    let (q, r) = (sum * sign_pow(n)).div_rem(&BigInt::from(d));
    if !r.is_zero() {
        let v = Rational::new(q * d + r, BigInt::from(d));
        return Err(Error::NonIntegralValue {
            class: mu.to_string(),
            value: v.to_string(),
        });
    }
    Ok(Cyclotomic::from_bigint(q))
}

fn check_nd(n: u32, d: u32) -> Result<()> {
    if n < 1 || d < 2 {
        return Err(Error::invalid(format!(
            "need n >= 1 and d >= 2 (got n={n}, d={d})"
        )));
    }
    Ok(())
}

/// Character of `S_{n+2}` on primitive middle cohomology of the Fermat-type
/// symmetric hypersurface: `((−1)^n/d) Σ_{e|d} φ(e)(1−d)^{m_e(σ)}`.
pub fn type_i_character(n: u32, d: u32) -> Result<ClassFunction> {
    check_nd(n, d)?;
    ClassFunction::try_from_fn(n + 2, |mu| divisor_sum(mu, n, d, m_e))
}

/// Class function of `S_{n+3}` given by `((−1)^n/d) Σ_{e|d} φ(e)(1−d)^{m'_e(σ)}`.
pub fn type_ii_character(n: u32, d: u32) -> Result<ClassFunction> {
    check_nd(n, d)?;
    ClassFunction::try_from_fn(n + 3, |mu| divisor_sum(mu, n, d, m_prime_e))
}

fn check_nl(n: u32, l: u64) -> Result<()> {
    if n < 1 || l < 1 {
        return Err(Error::invalid("need n >= 1 and l >= 1"));
    }
    Ok(())
}

/// `θ_{n,ℓ}(σ) = ℓ^{m_1(σ)}`, the permutation character of `S_n` on `A^n`.
pub fn theta(n: u32, l: u64) -> Result<ClassFunction> {
    check_nl(n, l)?;
    Ok(ClassFunction::from_ints(n, |mu| {
        pow(BigInt::from(l), mu.len())
    }))
}

/// `θ_{n,ℓ} / ℓ`.
pub fn theta_tilde(n: u32, l: u64) -> Result<ClassFunction> {
    check_nl(n, l)?;
    Ok(ClassFunction::from_ints(n, |mu| {
        pow(BigInt::from(l), mu.len() - 1)
    }))
}

/// `sg(σ) · θ_{n,ℓ}(σ) / ℓ`.
pub fn signed_theta_tilde(n: u32, l: u64) -> Result<ClassFunction> {
    check_nl(n, l)?;
    Ok(ClassFunction::from_ints(n, |mu| {
        pow(BigInt::from(l), mu.len() - 1) * mu.sign()
    }))
}

/// Finite abelian group `Z/c_1 × ⋯ × Z/c_k`; the empty list is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroupSpec {
    cyclic_orders: Vec<u64>,
}

impl AbelianGroupSpec {
    pub fn new(cyclic_orders: Vec<u64>) -> Result<Self> {
        if let Some(c) = cyclic_orders.iter().find(|&&c| c < 2) {
            return Err(Error::invalid(format!("cyclic factor of order {c}")));
        }
        Ok(AbelianGroupSpec { cyclic_orders })
    }

    pub fn cyclic(l: u64) -> Result<Self> {
        if l == 1 {
            return Self::new(vec![]);
        }
        Self::new(vec![l])
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.cyclic_orders
    }

    /// `ℓ = |A|`.
    pub fn order(&self) -> u64 {
        self.cyclic_orders.iter().product()
    }

    /// Parses `"4"`, `"2x2"`, `"2,3"` or `"Z/2xZ/2"`; `"1"` is the trivial group.
    pub fn parse(src: &str) -> Result<Self> {
        let mut orders = Vec::new();
        let mut offset = 0;
        for item in src.split(['x', ',', '×']) {
            let at = offset;
            offset += item.len() + 1;
            let t = item.trim();
            let t = t.strip_prefix("Z/").unwrap_or(t);
            let c: u64 = t
                .parse()
                .map_err(|_| Error::parse(at, format!("bad cyclic order {:?}", item.trim())))?;
            if c == 0 {
                return Err(Error::parse(at, "cyclic order must be positive"));
            }
            if c > 1 {
                orders.push(c);
            }
        }
        Self::new(orders)
    }
}

impl fmt::Display for AbelianGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cyclic_orders.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self
            .cyclic_orders
            .iter()
            .map(|c| format!("Z/{c}"))
            .collect();
        write!(f, "{}", s.join("x"))
    }
}

/// `|{a ∈ A : d(μ)·a = 0}| = Π_j gcd(d(μ), c_j)`.
pub fn d_a(mu: &Partition, a: &AbelianGroupSpec) -> u64 {
    let d = d_of(mu) as u64;
    a.cyclic_orders.iter().map(|&c| gcd(d, c)).product()
}

/// Permutation character of `S_n` on `M = {a ∈ A^n : Σ a_i = 0}`:
/// `d_A(σ) · ℓ^{m_1(σ) − 1}`.
pub fn chi_m(n: u32, a: &AbelianGroupSpec) -> Result<ClassFunction> {
    if n < 1 {
        return Err(Error::invalid("need n >= 1"));
    }
    let l = BigInt::from(a.order());
    Ok(ClassFunction::from_ints(n, |mu| {
        BigInt::from(d_a(mu, a)) * pow(l.clone(), mu.len() - 1)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lefschetz::{primitive_dimension, trace_primitive, HypersurfaceAction};
    use crate::symgroup::{is_character, partitions};

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    fn ints(f: &ClassFunction, order: &[&[u32]]) -> Vec<i64> {
        order
            .iter()
            .map(|k| {
                let v = f.value(&p(k)).to_integer().unwrap();
                i64::try_from(v).unwrap()
            })
            .collect()
    }

    #[test]
    fn permutation_spectra() {
        let s = permutation_spectrum(&p(&[3])).unwrap();
        assert_eq!(s, Spectrum::parse("3: 0, 1, 2").unwrap());
        let s = permutation_spectrum(&p(&[2, 1])).unwrap();
        assert_eq!(s, Spectrum::parse("2: 0^2, 1").unwrap());
        let s = reduced_permutation_spectrum(&p(&[1, 1, 1, 1])).unwrap();
        assert_eq!(s, Spectrum::trivial(3).unwrap());
        assert_eq!(
            reduced_permutation_spectrum(&p(&[1])),
            Err(Error::EmptySpectrum)
        );
        let s = permutation_spectrum(&p(&[4, 2])).unwrap();
        assert_eq!(s.mult_of_root(2, 1), 2);
        assert_eq!(s.mult_of_root(4, 1), 1);
        assert_eq!(s.mult(0), 2);
    }

    #[test]
    fn type_i_examples() {
        let chi = type_i_character(1, 3).unwrap();
        assert_eq!(ints(&chi, &[&[1, 1, 1], &[2, 1], &[3]]), vec![2, -2, 2]);
        let v = is_character(&chi);
        assert!(v.is_character);
        assert_eq!(
            v.multiplicities[&p(&[1, 1, 1])],
            Rational::from_integer(2.into())
        );
        assert!(is_character(&type_i_character(2, 2).unwrap()).is_character);
    }

    #[test]
    fn type_i_matches_trace_formula() {
        for n in 1..=4u32 {
            for d in 2..=5u32 {
                let chi = type_i_character(n, d).unwrap();
                let id = Partition::column(n + 2);
                assert_eq!(
                    chi.value(&id).to_integer().unwrap(),
                    primitive_dimension(n, d as u64)
                );
                for mu in partitions(n + 2) {
                    let a = HypersurfaceAction::new(d, permutation_spectrum(&mu).unwrap()).unwrap();
                    assert_eq!(chi.value(&mu), &trace_primitive(&a), "n={n} d={d} μ={mu}");
                }
            }
        }
    }

    #[test]
    fn type_ii_identity_and_sum() {
        for n in 1..=4u32 {
            for d in 2..=5u32 {
                let psi = type_ii_character(n, d).unwrap();
                let id = Partition::column(n + 3);
                assert_eq!(
                    psi.value(&id).to_integer().unwrap(),
                    primitive_dimension(n, d as u64)
                );
                let sum = &type_i_character(n + 1, d).unwrap() + &psi;
                assert_eq!(sum, signed_theta_tilde(n + 3, d as u64 - 1).unwrap());
            }
        }
        assert!(is_character(&type_ii_character(2, 3).unwrap()).is_character);
    }

    #[test]
    fn theta_family() {
        for n in 1..=6 {
            for l in 1..=4 {
                assert!(is_character(&theta(n, l).unwrap()).is_character);
            }
        }
        let t = theta_tilde(2, 3).unwrap();
        assert_eq!(ints(&t, &[&[1, 1], &[2]]), vec![3, 1]);
        assert!(theta(0, 2).is_err());
    }

    #[test]
    fn abelian_groups() {
        let a = AbelianGroupSpec::parse("Z/2xZ/2").unwrap();
        assert_eq!(a.order(), 4);
        assert_eq!(a.to_string(), "Z/2xZ/2");
        assert_eq!(AbelianGroupSpec::parse("1").unwrap().order(), 1);
        assert!(AbelianGroupSpec::parse("2x?").is_err());
        let z2 = AbelianGroupSpec::cyclic(2).unwrap();
        assert_eq!(d_a(&p(&[2]), &z2), 2);
        let chi = chi_m(2, &z2).unwrap();
        assert_eq!(ints(&chi, &[&[2], &[1, 1]]), vec![2, 2]);
        for n in 1..=5 {
            for spec in ["1", "2", "3", "4", "2x2"] {
                let a = AbelianGroupSpec::parse(spec).unwrap();
                let chi = chi_m(n, &a).unwrap();
                let id = chi.value(&Partition::column(n)).to_integer().unwrap();
                assert_eq!(id, pow(BigInt::from(a.order()), n as usize - 1));
                assert!(is_character(&chi).is_character, "A={spec}, n={n}");
            }
        }
    }
}
