use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::characters::CharacterTable;
use super::partition::{partitions, Partition};
use crate::arith::numtheory::factorial;
use crate::arith::{Cyclotomic, Rational};
use crate::error::{Error, Result};

/// A function on the conjugacy classes of `S_n`.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ClassFunctionJson", into = "ClassFunctionJson")]
pub struct ClassFunction {
    n: u32,
    values: BTreeMap<Partition, Cyclotomic>,
}

impl ClassFunction {
    /// Checks that `values` covers exactly the partitions of `n`.
    pub fn new(n: u32, values: BTreeMap<Partition, Cyclotomic>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("class functions need n >= 1"));
        }
        if let Some(bad) = values.keys().find(|p| p.n() != n) {
            return Err(Error::invalid(format!("{bad} is not a partition of {n}")));
        }
        let count = partitions(n).len();
        if values.len() != count {
            return Err(Error::invalid(format!(
                "expected values on {count} classes, got {}",
                values.len()
            )));
        }
        Ok(ClassFunction { n, values })
    }

    pub fn from_fn(n: u32, mut f: impl FnMut(&Partition) -> Cyclotomic) -> Self {
        assert!(n >= 1, "class functions need n >= 1");
        let values = partitions(n).into_iter().map(|p| {
            let v = f(&p);
            (p, v)
        });
        ClassFunction {
            n,
            values: values.collect(),
        }
    }

    pub fn try_from_fn(
        n: u32,
        mut f: impl FnMut(&Partition) -> Result<Cyclotomic>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("class functions need n >= 1"));
        }
        let values = partitions(n)
            .into_iter()
            .map(|p| f(&p).map(|v| (p, v)))
            .collect::<Result<_>>()?;
        Ok(ClassFunction { n, values })
    }

    pub fn from_ints(n: u32, mut f: impl FnMut(&Partition) -> BigInt) -> Self {
        Self::from_fn(n, |p| Cyclotomic::from_bigint(f(p)))
    }

    /// The irreducible character `χ^λ`.
    pub fn irreducible(lambda: &Partition) -> Self {
        let n = lambda.n();
        let t = CharacterTable::cached(n);
        Self::from_fn(n, |mu| Cyclotomic::from_int(t.value(lambda, mu)))
    }

    pub fn zero(n: u32) -> Self {
        Self::from_fn(n, |_| Cyclotomic::zero())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &BTreeMap<Partition, Cyclotomic> {
        &self.values
    }

    pub fn value(&self, mu: &Partition) -> &Cyclotomic {
        &self.values[mu]
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Cyclotomic::is_zero)
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        self.map(|v| v * c)
    }

    pub fn conj(&self) -> Self {
        self.map(Cyclotomic::conj)
    }

    fn map(&self, f: impl Fn(&Cyclotomic) -> Cyclotomic) -> Self {
        ClassFunction {
            n: self.n,
            values: self.values.iter().map(|(k, v)| (k.clone(), f(v))).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic) -> Self {
        assert_eq!(self.n, other.n, "class functions on different groups");
        ClassFunction {
            n: self.n,
            values: self
                .values
                .iter()
                .map(|(k, v)| (k.clone(), f(v, &other.values[k])))
                .collect(),
        }
    }

    /// Errors with `NonIntegralValue` on the first value that is not a
    /// rational integer.
    pub fn assert_integral(&self) -> Result<()> {
        for (mu, v) in &self.values {
            if v.to_integer().is_none() {
                return Err(Error::NonIntegralValue {
                    class: mu.to_string(),
                    value: v.to_string(),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (mu, v)) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{mu}: {v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassFunction(S_{}; {self})", self.n)
    }
}

impl Add for &ClassFunction {
    type Output = ClassFunction;
    fn add(self, o: &ClassFunction) -> ClassFunction {
        self.zip(o, |a, b| a + b)
    }
}

impl Sub for &ClassFunction {
    type Output = ClassFunction;
    fn sub(self, o: &ClassFunction) -> ClassFunction {
        self.zip(o, |a, b| a - b)
    }
}

impl Mul for &ClassFunction {
    type Output = ClassFunction;
    fn mul(self, o: &ClassFunction) -> ClassFunction {
        self.zip(o, |a, b| a * b)
    }
}

impl Neg for &ClassFunction {
    type Output = ClassFunction;
    fn neg(self) -> ClassFunction {
        self.map(|v| -v)
    }
}

#[derive(Serialize, Deserialize)]
struct ClassFunctionJson {
    n: u32,
    values: BTreeMap<String, String>,
}

impl From<ClassFunction> for ClassFunctionJson {
    fn from(f: ClassFunction) -> Self {
        ClassFunctionJson {
            n: f.n,
            values: f
                .values
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        }
    }
}

impl TryFrom<ClassFunctionJson> for ClassFunction {
    type Error = Error;
    fn try_from(j: ClassFunctionJson) -> Result<Self> {
        let values = j
            .values
            .iter()
            .map(|(k, v)| Ok((Partition::parse(k)?, Cyclotomic::parse(v)?)))
            .collect::<Result<_>>()?;
        ClassFunction::new(j.n, values)
    }
}

/// `⟨f, g⟩ = (1/n!) Σ_μ |C_μ| f(μ) conj(g(μ))`.
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Cyclotomic {
    assert_eq!(f.n, g.n, "class functions on different groups");
    let t = CharacterTable::cached(f.n);
    let sum: Cyclotomic = t
        .partitions()
        .iter()
        .zip(t.class_sizes())
        .map(|(mu, size)| {
            let w = Cyclotomic::from_bigint(BigInt::from(size.clone()));
            &(&w * &f.values[mu]) * &g.values[mu].conj()
        })
        .sum();
    let nf = BigInt::from(factorial(f.n as u64));
    sum.scale(&Rational::new(1.into(), nf))
}

/// `⟨f, χ^λ⟩` for every `λ ⊢ n`, kept as cyclotomic numbers.
pub fn decompose_exact(f: &ClassFunction) -> BTreeMap<Partition, Cyclotomic> {
    let t = CharacterTable::cached(f.n);
    t.partitions()
        .iter()
        .map(|l| (l.clone(), inner_product(f, &ClassFunction::irreducible(l))))
        .collect()
}

/// Multiplicities of the irreducibles in `f`; errors with `NotRational` if
/// any of them is irrational.
pub fn decompose(f: &ClassFunction) -> Result<BTreeMap<Partition, Rational>> {
    decompose_exact(f)
        .into_iter()
        .map(|(l, c)| {
            c.to_rational()
                .map(|r| (l.clone(), r))
                .map_err(|_| Error::NotRational(format!("multiplicity of {l} is {c}")))
        })
        .collect()
}

/// Outcome of testing whether a class function is a character.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterVerdict {
    pub is_character: bool,
    #[serde(with = "rational_map")]
    pub multiplicities: BTreeMap<Partition, Rational>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Partition>,
    /// Irreducibles whose multiplicity is not even rational.
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub non_rational: BTreeMap<Partition, Cyclotomic>,
}

mod rational_map {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        m: &BTreeMap<Partition, Rational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let strs: BTreeMap<String, String> = m
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BTreeMap<Partition, Rational>, D::Error> {
        use serde::de::Error as _;
        let strs = BTreeMap::<String, String>::deserialize(d)?;
        strs.into_iter()
            .map(|(k, v)| {
                let p = Partition::parse(&k).map_err(D::Error::custom)?;
                let r = v.parse::<Rational>().map_err(D::Error::custom)?;
                Ok((p, r))
            })
            .collect()
    }
}

/// Decides whether `f` is the character of a (possibly zero) representation:
/// every multiplicity must be a non-negative integer. The witness is the
/// first offending irreducible, scanning from `(n)` to `(1^n)`.
pub fn is_character(f: &ClassFunction) -> CharacterVerdict {
    let t = CharacterTable::cached(f.n);
    let exact = decompose_exact(f);
    let mut multiplicities = BTreeMap::new();
    let mut non_rational = BTreeMap::new();
    let mut witness = None;
    for l in t.partitions() {
        let c = &exact[l];
        match c.to_rational() {
            Ok(r) => {
                let bad = !r.is_integer() || r < Rational::from_integer(0.into());
                if bad && witness.is_none() {
                    witness = Some(l.clone());
                }
                multiplicities.insert(l.clone(), r);
            }
            Err(_) => {
                if witness.is_none() {
                    witness = Some(l.clone());
                }
                non_rational.insert(l.clone(), c.clone());
            }
        }
    }
    CharacterVerdict {
        is_character: witness.is_none(),
        multiplicities,
        witness,
        non_rational,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rational, root_of_unity};

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    fn vals(n: u32, v: &[(&[u32], i64)]) -> ClassFunction {
        let m = v
            .iter()
            .map(|(k, x)| (p(k), Cyclotomic::from_int(*x)))
            .collect();
        ClassFunction::new(n, m).unwrap()
    }

    #[test]
    fn irreducibles_are_orthonormal() {
        for n in 1..=6 {
            let irr: Vec<_> = CharacterTable::cached(n)
                .partitions()
                .iter()
                .map(ClassFunction::irreducible)
                .collect();
            for (i, a) in irr.iter().enumerate() {
                for (j, b) in irr.iter().enumerate() {
                    let want = if i == j { 1 } else { 0 };
                    assert_eq!(inner_product(a, b), Cyclotomic::from_int(want));
                }
            }
        }
    }

    #[test]
    fn regular_character() {
        let reg = ClassFunction::from_ints(4, |mu| {
            if mu.len() == 4 {
                BigInt::from(24)
            } else {
                BigInt::from(0)
            }
        });
        let v = is_character(&reg);
        assert!(v.is_character);
        for (l, m) in &v.multiplicities {
            let dim = CharacterTable::cached(4).value(l, &Partition::column(4));
            assert_eq!(*m, rational(dim, 1));
        }
    }

    #[test]
    fn verdicts_on_small_examples() {
        let f = vals(2, &[(&[1, 1], 2), (&[2], 1)]);
        let v = is_character(&f);
        assert!(!v.is_character);
        assert_eq!(v.witness, Some(p(&[2])));
        assert_eq!(v.multiplicities[&p(&[2])], rational(3, 2));

        let g = vals(2, &[(&[1, 1], 3), (&[2], 1)]);
        let v = is_character(&g);
        assert!(v.is_character);
        assert_eq!(v.multiplicities[&p(&[2])], rational(2, 1));
        assert_eq!(v.multiplicities[&p(&[1, 1])], rational(1, 1));

        assert!(is_character(&ClassFunction::zero(3)).is_character);
        assert!(!is_character(&-&ClassFunction::irreducible(&p(&[2, 1]))).is_character);
    }

    #[test]
    fn non_rational_multiplicity_lands_in_verdict() {
        let w = root_of_unity(3, 1);
        let f = ClassFunction::from_fn(2, |mu| {
            if mu.len() == 2 {
                w.clone()
            } else {
                Cyclotomic::zero()
            }
        });
        assert!(decompose(&f).is_err());
        let v = is_character(&f);
        assert!(!v.is_character);
        assert_eq!(v.non_rational.len(), 2);
        assert_eq!(v.witness, Some(p(&[2])));
    }

    #[test]
    fn json_shape() {
        let f = vals(2, &[(&[1, 1], 2), (&[2], 1)]);
        let j = serde_json::to_value(&f).unwrap();
        assert_eq!(
            j,
            serde_json::json!({"n": 2, "values": {"[1,1]": "2", "[2]": "1"}})
        );
        assert_eq!(serde_json::from_value::<ClassFunction>(j).unwrap(), f);
        let v = serde_json::to_value(is_character(&f)).unwrap();
        assert_eq!(v["witness"], "[2]");
        assert_eq!(v["multiplicities"]["[2]"], "3/2");
        assert!(ClassFunction::new(3, BTreeMap::new()).is_err());
    }
}
