//! Exact arithmetic in cyclotomic fields `Q(ζ_N) = Q[z]/(Φ_N(z))`.
//!
//! An element is stored in the power basis `1, z, …, z^{φ(N)-1}` as an
//! integer vector over a common positive denominator. Binary operations
//! embed both operands into the field of the lcm conductor; any result that
//! lies in `Q` collapses back to conductor 1. [`Cyclotomic::normalized`]
//! computes the minimal conductor, which is what display and JSON use.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::numtheory::{self, cyclotomic_polynomial_i64};
use super::Rational;
use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq)]
struct Field {
    conductor: u64,
    /// Monic `Φ_N`, increasing degree.
    modulus: Vec<i64>,
}

impl Field {
    fn new(conductor: u64) -> Arc<Field> {
        if conductor == 1 {
            return rationals();
        }
        Arc::new(Field {
            conductor,
            modulus: cyclotomic_polynomial_i64(conductor),
        })
    }

    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Reduces an integer polynomial of any length modulo `Φ_N`.
    fn reduce(&self, mut poly: Vec<BigInt>) -> Vec<BigInt> {
        let deg = self.degree();
        for i in (deg..poly.len()).rev() {
            if poly[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut poly[i]);
            for (j, m) in self.modulus[..deg].iter().enumerate() {
                if *m != 0 {
                    poly[i - deg + j] -= &c * *m;
                }
            }
        }
        poly.resize(deg, BigInt::zero());
        poly
    }
}

fn rationals() -> Arc<Field> {
    static Q: OnceLock<Arc<Field>> = OnceLock::new();
    Q.get_or_init(|| {
        Arc::new(Field {
            conductor: 1,
            modulus: vec![-1, 1],
        })
    })
    .clone()
}

/// An exact element of a cyclotomic field.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<Field>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    fn from_parts(field: Arc<Field>, num: Vec<BigInt>, den: BigInt) -> Self {
        debug_assert_eq!(num.len(), field.degree());
        let mut out = Cyclotomic { field, num, den };
        out.canonicalize();
        out
    }

    fn canonicalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() && !g.is_zero() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
        }
        if self.field.conductor != 1 && self.num[1..].iter().all(Zero::is_zero) {
            let c = std::mem::take(&mut self.num[0]);
            self.field = rationals();
            self.num = vec![c];
        }
    }

    pub fn zero() -> Self {
        Cyclotomic {
            field: rationals(),
            num: vec![BigInt::zero()],
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Cyclotomic {
            field: rationals(),
            num: vec![BigInt::from(v)],
            den: BigInt::one(),
        }
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Cyclotomic {
            field: rationals(),
            num: vec![v],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        Cyclotomic {
            field: rationals(),
            num: vec![r.numer().clone()],
            den: r.denom().clone(),
        }
    }

    /// `ζ_N^k` with `ζ_N = exp(2πi/N)`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        assert!(n >= 1, "root_of_unity needs a positive order");
        let k = k.rem_euclid(n as i64) as u64;
        let g = numtheory::gcd(k, n);
        // ζ_N^k = ζ_{N/g}^{k/g}; work in the smallest field that contains it
        let (order, exp) = (n / g, (k / g) as usize);
        let field = Field::new(order);
        let mut poly = vec![BigInt::zero(); exp.max(field.degree()) + 1];
        poly[exp] = BigInt::one();
        let num = field.reduce(poly);
        Cyclotomic::from_parts(field, num, BigInt::one())
    }

    /// Builds an element of `Q(ζ_N)` from its power-basis coordinates.
    pub fn from_coeffs(conductor: u64, coeffs: &[Rational]) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::invalid("conductor must be positive"));
        }
        let field = Field::new(conductor);
        if coeffs.len() != field.degree() {
            return Err(Error::invalid(format!(
                "conductor {conductor} needs {} coefficients, got {}",
                field.degree(),
                coeffs.len()
            )));
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Cyclotomic::from_parts(field, num, den))
    }

    /// Conductor of the field this value is currently stored in. Rational
    /// values always report 1; otherwise see [`Cyclotomic::normalized`].
    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    /// Power-basis coordinates at the stored conductor.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.field.conductor == 1 && self.num[0] == self.den
    }

    pub fn is_rational(&self) -> bool {
        self.field.conductor == 1
    }

    pub fn to_rational(&self) -> Result<Rational> {
        if self.is_rational() {
            Ok(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }

    /// Rational integer value, if this is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        (self.is_rational() && self.den.is_one()).then(|| self.num[0].clone())
    }

    /// Re-expresses the value in `Q(ζ_target)`; `target` must be a multiple
    /// of the current conductor.
    pub fn embed(&self, target: u64) -> Self {
        assert!(
            target % self.field.conductor == 0,
            "cannot embed conductor {} into {target}",
            self.field.conductor
        );
        if target == self.field.conductor {
            return self.clone();
        }
        let field = Field::new(target);
        self.embed_into(&field).canonical()
    }

    fn embed_into(&self, field: &Arc<Field>) -> Self {
        if Arc::ptr_eq(field, &self.field) || field.conductor == self.field.conductor {
            return Cyclotomic {
                field: field.clone(),
                num: self.num.clone(),
                den: self.den.clone(),
            };
        }
        let step = (field.conductor / self.field.conductor) as usize;
        let len = (self.num.len().saturating_sub(1)) * step + 1;
        let mut poly = vec![BigInt::zero(); len.max(field.degree())];
        for (i, c) in self.num.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        let num = field.reduce(poly);
        // embedding never collapses, but keep invariants uniform
        Cyclotomic {
            field: field.clone(),
            num,
            den: self.den.clone(),
        }
    }

    /// Brings two operands into a common field.
    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        let (na, nb) = (a.field.conductor, b.field.conductor);
        if na == nb {
            (a.clone(), b.clone())
        } else if na % nb == 0 {
            (a.clone(), b.embed_into(&a.field))
        } else if nb % na == 0 {
            (a.embed_into(&b.field), b.clone())
        } else {
            let field = Field::new(numtheory::lcm(na, nb));
            (a.embed_into(&field), b.embed_into(&field))
        }
    }

    fn common_field(a: &Self, b: &Self) -> Arc<Field> {
        let (na, nb) = (a.field.conductor, b.field.conductor);
        if na % nb == 0 {
            a.field.clone()
        } else if nb % na == 0 {
            b.field.clone()
        } else {
            Field::new(numtheory::lcm(na, nb))
        }
    }

    fn add_signed(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let field = Self::common_field(self, other);
        let a = self.embed_into(&field);
        let b = other.embed_into(&field);
        let den = &a.den * &b.den;
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| {
                let l = x * &b.den;
                let r = y * &a.den;
                if negate {
                    l - r
                } else {
                    l + r
                }
            })
            .collect();
        Cyclotomic::from_parts(field, num, den)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_rational() || other.is_rational() {
            let (r, x) = if self.is_rational() {
                (self, other)
            } else {
                (other, self)
            };
            let num = x.num.iter().map(|c| c * &r.num[0]).collect();
            return Cyclotomic::from_parts(x.field.clone(), num, &x.den * &r.den);
        }
        let field = Self::common_field(self, other);
        let a = self.embed_into(&field);
        let b = other.embed_into(&field);
        let deg = field.degree();
        let mut prod = vec![BigInt::zero(); 2 * deg - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let num = field.reduce(prod);
        Cyclotomic::from_parts(field, num, a.den * b.den)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self * &Cyclotomic::from_rational(r)
    }

    /// Multiplicative inverse, by the extended Euclidean algorithm in `Q[z]`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Cyclotomic {
                field: rationals(),
                num: vec![self.den.clone()],
                den: self.num[0].clone(),
            }
            .canonical());
        }
        let a: Vec<Rational> = self.coeffs();
        let m: Vec<Rational> = self
            .field
            .modulus
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect();
        let s = qpoly::inverse_mod(&a, &m).ok_or(Error::DivisionByZero)?;
        let mut s = s;
        s.resize(self.field.degree(), Rational::zero());
        let field = self.field.clone();
        let den = s.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = s.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(Cyclotomic::from_parts(field, num, den))
    }

    fn canonical(mut self) -> Self {
        self.canonicalize();
        self
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Cyclotomic::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Applies the Galois automorphism `ζ_N ↦ ζ_N^j` of `Q(ζ_N)`, where `N`
    /// is the stored conductor. `j` must be coprime to `N`.
    pub fn galois(&self, j: i64) -> Self {
        let n = self.field.conductor;
        let j = j.rem_euclid(n as i64) as u64;
        assert_eq!(numtheory::gcd(j, n), 1, "Galois exponent must be a unit");
        if self.is_rational() {
            return self.clone();
        }
        let mut poly = vec![BigInt::zero(); n as usize];
        for (i, c) in self.num.iter().enumerate() {
            let k = (i as u64 * j % n) as usize;
            poly[k] += c;
        }
        let num = self.field.reduce(poly);
        Cyclotomic::from_parts(self.field.clone(), num, self.den.clone())
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// The same value stored at its minimal conductor.
    pub fn normalized(&self) -> Self {
        let n = self.field.conductor;
        if n == 1 {
            return self.clone();
        }
        let target = self.coeffs();
        for m in numtheory::divisors(n) {
            if m == n {
                break;
            }
            if m == 1 {
                continue; // rational values already collapse eagerly
            }
            if let Some(sol) = self.solve_in_subfield(m, &target) {
                let field = Field::new(m);
                let den = sol.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
                let num = sol.iter().map(|c| c.numer() * (&den / c.denom())).collect();
                return Cyclotomic::from_parts(field, num, den);
            }
        }
        self.clone()
    }

    /// Solves `Σ_i c_i ζ_m^i = self` for `i < φ(m)`, if possible.
    fn solve_in_subfield(&self, m: u64, target: &[Rational]) -> Option<Vec<Rational>> {
        let sub = Field::new(m);
        let cols = sub.degree();
        let rows = self.field.degree();
        // column i = embedding of ζ_m^i
        let mut mat: Vec<Vec<Rational>> = vec![vec![Rational::zero(); cols + 1]; rows];
        for i in 0..cols {
            let mut basis = vec![BigInt::zero(); cols];
            basis[i] = BigInt::one();
            let e = Cyclotomic {
                field: sub.clone(),
                num: basis,
                den: BigInt::one(),
            }
            .embed_into(&self.field);
            for (r, c) in e.num.iter().enumerate() {
                mat[r][i] = Rational::from_integer(c.clone());
            }
        }
        for (r, t) in target.iter().enumerate() {
            mat[r][cols] = t.clone();
        }
        qpoly::solve(mat, cols)
    }

    /// Exponent `k` with `self = ζ_N^k` at the stored conductor, if the value
    /// is a root of unity of order dividing `N`.
    pub fn root_exponent(&self) -> Option<(u64, u64)> {
        let n = self.field.conductor;
        (0..n).find_map(|k| (Cyclotomic::root_of_unity(n, k as i64) == *self).then_some((n, k)))
    }

    /// Parses literals such as `3`, `-1/2`, `zeta(6)`, `2*zeta(12)^5 - 1`.
    pub fn parse(src: &str) -> Result<Self> {
        literal::parse(src)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.field.conductor == other.field.conductor {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Self::unify(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for Cyclotomic {}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Self::from_rational(&r)
    }
}

impl From<&Rational> for Cyclotomic {
    fn from(r: &Rational) -> Self {
        Self::from_rational(r)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                let f: fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic = $body;
                f(self, rhs)
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
        impl $tr<Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_signed(b, false));
forward_binop!(Sub, sub, |a, b| a.add_signed(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for Cyclotomic {
    fn product<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for Cyclotomic {
    /// Renders the minimal-conductor power-basis form, e.g.
    /// `-1 - 2*zeta(3)` or `1/2*zeta(8)^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.normalized();
        if v.is_rational() {
            return write!(f, "{}", Rational::new(v.num[0].clone(), v.den.clone()));
        }
        let n = v.field.conductor;
        let mut first = true;
        for (i, c) in v.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "zeta({n})")?;
                    } else {
                        write!(f, "zeta({n})^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

/// Canonical JSON form `{"conductor": N, "coeffs": ["p/q", ...]}` at the
/// minimal conductor.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CyclotomicJson {
    pub conductor: u64,
    pub coeffs: Vec<String>,
}

impl From<&Cyclotomic> for CyclotomicJson {
    fn from(c: &Cyclotomic) -> Self {
        let v = c.normalized();
        CyclotomicJson {
            conductor: v.conductor(),
            coeffs: v.coeffs().iter().map(|r| r.to_string()).collect(),
        }
    }
}

impl TryFrom<&CyclotomicJson> for Cyclotomic {
    type Error = Error;
    fn try_from(j: &CyclotomicJson) -> Result<Self> {
        let coeffs = j
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, s)| {
                s.parse::<Rational>()
                    .map_err(|_| Error::parse(i, format!("bad rational {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Cyclotomic::from_coeffs(j.conductor, &coeffs)
    }
}

impl serde::Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CyclotomicJson::from(self).serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = CyclotomicJson::deserialize(d)?;
        Cyclotomic::try_from(&j).map_err(serde::de::Error::custom)
    }
}

/// Dense polynomials over `Q`, only what inversion and subfield detection need.
mod qpoly {
    use super::Rational;
    use num_traits::{One, Zero};

    fn trim(p: &mut Vec<Rational>) {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }

    fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = b[db].recip();
        if r.len() < b.len() {
            return (vec![], r);
        }
        let mut q = vec![Rational::zero(); r.len() - db];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() * &lead_inv;
            for (j, bj) in b.iter().enumerate() {
                r[shift + j] -= &c * bj;
            }
            q[shift] = c;
            r.pop();
            trim(&mut r);
        }
        (q, r)
    }

    fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.len().max(b.len())];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, y) in b.iter().enumerate() {
            out[i] -= y;
        }
        trim(&mut out);
        out
    }

    /// `s` with `s·a ≡ 1 (mod m)`, or `None` when `gcd(a, m) ≠ 1`.
    pub(super) fn inverse_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
        let mut r0 = m.to_vec();
        let mut r1 = a.to_vec();
        trim(&mut r1);
        let mut s0: Vec<Rational> = vec![];
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].recip();
        let (_, s) = divrem(&s0.iter().map(|x| x * &c).collect::<Vec<_>>(), m);
        Some(s)
    }

    /// Solves an augmented system with `cols` unknowns; `None` if inconsistent.
    pub(super) fn solve(mut mat: Vec<Vec<Rational>>, cols: usize) -> Option<Vec<Rational>> {
        let rows = mat.len();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            let Some(p) = (row..rows).find(|&r| !mat[r][col].is_zero()) else {
                continue;
            };
            mat.swap(row, p);
            let inv = mat[row][col].recip();
            for c in col..=cols {
                let v = &mat[row][c] * &inv;
                mat[row][c] = v;
            }
            for r in 0..rows {
                if r != row && !mat[r][col].is_zero() {
                    let f = mat[r][col].clone();
                    for c in col..=cols {
                        let v = &f * &mat[row][c];
                        mat[r][c] -= v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if mat[row..].iter().any(|r| !r[cols].is_zero()) {
            return None;
        }
        let mut sol = vec![Rational::zero(); cols];
        for (r, &c) in pivots.iter().enumerate() {
            sol[c] = mat[r][cols].clone();
        }
        Some(sol)
    }
}

/// Parser for the literal syntax accepted by the CLI.
mod literal {
    use super::{Cyclotomic, Rational};
    use crate::error::{Error, Result};
    use num_bigint::BigInt;

    struct Lexer<'a> {
        src: &'a [u8],
        pos: usize,
    }

    impl<'a> Lexer<'a> {
        fn skip_ws(&mut self) {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
        }

        fn peek(&mut self) -> Option<u8> {
            self.skip_ws();
            self.src.get(self.pos).copied()
        }

        fn eat(&mut self, c: u8) -> bool {
            if self.peek() == Some(c) {
                self.pos += 1;
                true
            } else {
                false
            }
        }

        fn expect(&mut self, c: u8) -> Result<()> {
            if self.eat(c) {
                Ok(())
            } else {
                Err(Error::parse(self.pos, format!("expected '{}'", c as char)))
            }
        }

        fn integer(&mut self) -> Result<BigInt> {
            self.skip_ws();
            let start = self.pos;
            if self.src.get(self.pos) == Some(&b'-') {
                self.pos += 1;
            }
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            std::str::from_utf8(&self.src[start..self.pos])
                .ok()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::parse(start, "expected an integer"))
        }

        fn keyword(&mut self, kw: &str) -> bool {
            self.skip_ws();
            if self.src[self.pos..].starts_with(kw.as_bytes()) {
                self.pos += kw.len();
                true
            } else {
                false
            }
        }

        fn atom(&mut self) -> Result<Cyclotomic> {
            if self.keyword("zeta") {
                self.expect(b'(')?;
                let at = self.pos;
                let n = self.integer()?;
                let n = u64::try_from(n)
                    .ok()
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| Error::parse(at, "zeta order must be positive"))?;
                self.expect(b')')?;
                let k = if self.eat(b'^') {
                    let at = self.pos;
                    i64::try_from(self.integer()?)
                        .map_err(|_| Error::parse(at, "exponent out of range"))?
                } else {
                    1
                };
                return Ok(Cyclotomic::root_of_unity(n, k));
            }
            let num = self.integer()?;
            let r = if self.eat(b'/') {
                let at = self.pos;
                let den = self.integer()?;
                if den == BigInt::from(0) {
                    return Err(Error::parse(at, "zero denominator"));
                }
                Rational::new(num, den)
            } else {
                Rational::from_integer(num)
            };
            Ok(Cyclotomic::from_rational(&r))
        }

        fn term(&mut self) -> Result<Cyclotomic> {
            let mut acc = self.atom()?;
            while self.eat(b'*') {
                acc = acc * self.atom()?;
            }
            Ok(acc)
        }
    }

    pub(super) fn parse(src: &str) -> Result<Cyclotomic> {
        let mut lx = Lexer {
            src: src.as_bytes(),
            pos: 0,
        };
        let mut acc = if lx.eat(b'-') {
            -lx.term()?
        } else {
            lx.term()?
        };
        loop {
            match lx.peek() {
                None => return Ok(acc),
                Some(b'+') => {
                    lx.pos += 1;
                    acc = acc + lx.term()?;
                }
                Some(b'-') => {
                    lx.pos += 1;
                    acc = acc - lx.term()?;
                }
                Some(c) => {
                    return Err(Error::parse(
                        lx.pos,
                        format!("unexpected character '{}'", c as char),
                    ))
                }
            }
        }
    }
}

/// `ζ_N^k`; see [`Cyclotomic::root_of_unity`].
pub fn root_of_unity(n: u64, k: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> Cyclotomic {
        root_of_unity(n, k)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn root_of_unity_examples() {
        assert_eq!(z(1, 0), Cyclotomic::one());
        assert!(z(1, 0).is_one());
        assert_eq!(z(4, 2), Cyclotomic::from_int(-1));
        assert_eq!(z(4, 2).conductor(), 1);
        assert_eq!(z(3, 1) + z(3, 2), Cyclotomic::from_int(-1));
    }

    #[test]
    fn field_op_examples() {
        assert_eq!(z(5, 1).inv().unwrap(), z(5, 4));
        assert_eq!(z(6, 1) * z(6, 2) * z(6, 3), Cyclotomic::one());
        // (z - 1)(z^2 - 1) = z^3 - z^2 - z + 1 = 1 - z^2 - z + 1 = 2 + 1 = 3 mod z^2+z+1
        let one = Cyclotomic::one();
        assert_eq!((z(3, 1) - &one) * (z(3, 2) - &one), Cyclotomic::from_int(3));
        assert_eq!(Cyclotomic::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn to_rational_examples() {
        assert_eq!(Cyclotomic::one().to_rational().unwrap(), q(1, 1));
        assert_eq!(z(4, 2).to_rational().unwrap(), q(-1, 1));
        assert!(matches!(z(5, 1).to_rational(), Err(Error::NotRational(_))));
    }

    #[test]
    fn mixed_conductors() {
        // ζ_4 · ζ_3 = ζ_12^{3+4}
        assert_eq!(z(4, 1) * z(3, 1), z(12, 7));
        // i^2 + 1 = 0 after mixing with a cube root
        let i = z(4, 1);
        let w = z(3, 1);
        let e = &i * &w;
        assert_eq!(&e * &e, z(6, 1));
        // ζ_6 lives in Q(ζ_3)
        assert_eq!(z(6, 1).normalized().conductor(), 3);
        assert_eq!(z(12, 4).conductor(), 3);
        // sqrt(2) = ζ_8 + ζ_8^7 lives in Q(ζ_8) but not in Q(ζ_4)
        let s2 = z(8, 1) + z(8, 7);
        assert_eq!(&s2 * &s2, Cyclotomic::from_int(2));
        assert_eq!(s2.normalized().conductor(), 8);
        // sqrt(-3) = 2ζ_3 + 1 detected in Q(ζ_3) after embedding in Q(ζ_12)
        let s3 = (z(3, 1).scale(&q(2, 1)) + Cyclotomic::one()).embed(12);
        assert_eq!(s3.conductor(), 12);
        assert_eq!(s3.normalized().conductor(), 3);
    }

    #[test]
    fn embedding_round_trip() {
        for n in 1..=12u64 {
            for k in 0..n as i64 {
                let a = z(n, k) + Cyclotomic::from_rational(&q(3, 7));
                for mult in 1..=3 {
                    let big = a.embed(a.conductor() * mult);
                    assert_eq!(big, a);
                    assert_eq!(big.normalized(), a);
                    assert_eq!(big.normalized().conductor(), a.normalized().conductor());
                }
            }
        }
    }

    #[test]
    fn galois_and_conjugation() {
        assert_eq!(z(5, 1).galois(2), z(5, 2));
        assert_eq!(z(12, 5).conj(), z(12, 7));
        let s2 = z(8, 1) + z(8, 7);
        assert_eq!(s2.galois(3), -&s2);
        let a = Cyclotomic::from_int(7);
        assert_eq!(a.galois(3), a);
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(Cyclotomic::from_rational(&q(-3, 4)).to_string(), "-3/4");
        assert_eq!(z(3, 1).to_string(), "zeta(3)");
        assert_eq!(z(3, 2).to_string(), "-1 - zeta(3)");
        assert_eq!(z(6, 1).to_string(), "1 + zeta(3)");
        for s in [
            "zeta(5)^3",
            "2*zeta(12)^5 - 1/3",
            "-zeta(7) + zeta(7)^2",
            "5",
            "-1/2",
        ] {
            let v = Cyclotomic::parse(s).unwrap();
            assert_eq!(Cyclotomic::parse(&v.to_string()).unwrap(), v, "{s}");
        }
        assert_eq!(
            Cyclotomic::parse("zeta(4)^2").unwrap(),
            Cyclotomic::from_int(-1)
        );
        assert!(matches!(
            Cyclotomic::parse("zeta(0)"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Cyclotomic::parse("1 $ 2"),
            Err(Error::Parse { position: 2, .. })
        ));
    }

    #[test]
    fn json_shape() {
        let v = z(6, 1);
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j, serde_json::json!({"conductor": 3, "coeffs": ["1", "1"]}));
        let back: Cyclotomic = serde_json::from_value(j).unwrap();
        assert_eq!(back, v);
        let half = Cyclotomic::from_rational(&q(1, 2));
        assert_eq!(
            serde_json::to_value(&half).unwrap(),
            serde_json::json!({"conductor": 1, "coeffs": ["1/2"]})
        );
    }
}
