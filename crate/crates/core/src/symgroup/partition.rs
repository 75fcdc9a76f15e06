use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::numtheory::{self, factorial};
use crate::error::{Error, Result};

/// Integer partition, parts weakly decreasing. Doubles as the cycle type of
/// a conjugacy class of `S_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts; for a cycle type this is `m_1`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `(n)`
    pub fn row(n: u32) -> Self {
        Partition::new(vec![n])
    }

    /// `(1^n)`
    pub fn column(n: u32) -> Self {
        Partition::new(vec![1; n as usize])
    }

    pub fn conjugate(&self) -> Self {
        let first = self.parts.first().copied().unwrap_or(0);
        Partition::new(
            (1..=first)
                .map(|i| self.parts.iter().filter(|&&p| p >= i).count() as u32)
                .collect(),
        )
    }

    /// Number of times each size occurs: `(size, count)`, decreasing size.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((s, c)) if *s == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `z_μ = Π_i i^{d_i} d_i!`, the centralizer order.
    pub fn centralizer_order(&self) -> BigUint {
        self.multiplicities()
            .into_iter()
            .fold(BigUint::one(), |acc, (i, d)| {
                acc * BigUint::from(i).pow(d) * factorial(d as u64)
            })
    }

    /// `sg(σ) = (−1)^{n − #cycles}`.
    pub fn sign(&self) -> i64 {
        if (self.n() as usize - self.len()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Parses `"[3,2,1]"` (brackets optional, `[]` is the empty partition).
    pub fn parse(src: &str) -> Result<Self> {
        let t = src.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .unwrap_or(t);
        if inner.trim().is_empty() {
            return Ok(Partition::new(vec![]));
        }
        let mut parts = Vec::new();
        let mut offset = src.find(inner).unwrap_or(0);
        for item in inner.split(',') {
            let v: u32 = item.trim().parse().map_err(|_| {
                Error::parse(offset, format!("bad partition part {:?}", item.trim()))
            })?;
            if v == 0 {
                return Err(Error::parse(offset, "partition parts must be positive"));
            }
            parts.push(v);
            offset += item.len() + 1;
        }
        Ok(Partition::new(parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<Partition> for String {
    fn from(p: Partition) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Partition {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        Partition::parse(&s)
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Partition::parse(s)
    }
}

/// All partitions of `n`, from `(n)` down to `(1^n)` in reverse
/// lexicographic order.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Size `n!/z_μ` of the conjugacy class with cycle type `μ`.
pub fn class_size(mu: &Partition) -> BigUint {
    factorial(mu.n() as u64) / mu.centralizer_order()
}

/// Number of parts divisible by `e` (number of cycles whose length `e` divides).
pub fn m_e(mu: &Partition, e: u32) -> u32 {
    assert!(e >= 1);
    mu.parts.iter().filter(|&&p| p % e == 0).count() as u32
}

/// `m_e` for `e > 1`, `m_1 − 1` for `e = 1`.
pub fn m_prime_e(mu: &Partition, e: u32) -> u32 {
    let m = m_e(mu, e);
    if e == 1 {
        m - 1
    } else {
        m
    }
}

/// Greatest common divisor of the parts.
pub fn d_of(mu: &Partition) -> u32 {
    mu.parts
        .iter()
        .fold(0u64, |g, &p| numtheory::gcd(g, p as u64)) as u32
}

/// A permutation of `{0, …, n−1}` with cycle type `μ`: consecutive blocks
/// of sizes `μ_1, μ_2, …`, each rotated by one.
pub fn permutation_of_type(mu: &Partition) -> Vec<usize> {
    let mut perm = Vec::with_capacity(mu.n() as usize);
    let mut start = 0usize;
    for &p in &mu.parts {
        let p = p as usize;
        for i in 0..p {
            perm.push(start + (i + 1) % p);
        }
        start += p;
    }
    perm
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn enumeration() {
        assert_eq!(partitions(4).len(), 5);
        let counts: Vec<usize> = (1..=10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(partitions(3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
    }

    #[test]
    fn class_sizes() {
        assert_eq!(class_size(&p(&[2, 1])), BigUint::from(3u32));
        let total: BigUint = partitions(5).iter().map(class_size).sum();
        assert_eq!(total, BigUint::from(120u32));
        for n in 1..=8 {
            let total: BigUint = partitions(n).iter().map(class_size).sum();
            assert_eq!(total, factorial(n as u64));
        }
    }

    #[test]
    fn cycle_counts() {
        let mu = p(&[3, 2, 1]);
        assert_eq!(m_e(&mu, 1), 3);
        assert_eq!(m_e(&mu, 2), 1);
        assert_eq!(m_e(&mu, 3), 1);
        assert_eq!(m_prime_e(&p(&[1, 1, 1]), 1), 2);
        assert_eq!(m_prime_e(&mu, 2), 1);
        assert_eq!(d_of(&p(&[4, 2])), 2);
        assert_eq!(d_of(&p(&[3, 2, 1])), 1);
    }

    #[test]
    fn parse_display_conjugate() {
        let mu = Partition::parse("[3,2,1]").unwrap();
        assert_eq!(mu, p(&[3, 2, 1]));
        assert_eq!(mu.to_string(), "[3,2,1]");
        assert_eq!(Partition::parse(" [1, 3] ").unwrap(), p(&[3, 1]));
        assert!(Partition::parse("[3,x]").is_err());
        assert!(Partition::parse("[3,0]").is_err());
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[3, 2, 1]).sign(), -1);
        assert_eq!(p(&[3, 1]).sign(), 1);
        assert_eq!(p(&[2, 1]).sign(), -1);
    }

    #[test]
    fn permutation_has_requested_type() {
        let mu = p(&[3, 2, 2, 1]);
        let perm = permutation_of_type(&mu);
        let mut seen = vec![false; perm.len()];
        let mut lens = Vec::new();
        for s in 0..perm.len() {
            if seen[s] {
                continue;
            }
            let (mut i, mut len) = (s, 0);
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
                len += 1;
            }
            lens.push(len);
        }
        assert_eq!(Partition::new(lens), mu);
    }
}
