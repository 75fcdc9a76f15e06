use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::{Cyclotomic, Rational};
use crate::error::{Error, Result};

/// Polynomial in `y` with cyclotomic coefficients. Trailing zeros are never
/// stored, so the zero polynomial has no coefficients and no degree.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct YPoly {
    coeffs: Vec<Cyclotomic>,
}

impl YPoly {
    pub fn new(mut coeffs: Vec<Cyclotomic>) -> Self {
        while coeffs.last().is_some_and(Cyclotomic::is_zero) {
            coeffs.pop();
        }
        YPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Cyclotomic::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        YPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Cyclotomic::one())
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::new(vec![c])
    }

    /// `c · y^k`
    pub fn monomial(c: Cyclotomic, k: usize) -> Self {
        let mut v = vec![Cyclotomic::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `a + b·y`
    pub fn linear(a: Cyclotomic, b: Cyclotomic) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Cyclotomic] {
        &self.coeffs
    }

    /// Coefficient of `y^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Cyclotomic {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` stands for the degree −∞ of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Cyclotomic> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        YPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division over the coefficient field.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lead_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Cyclotomic::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&c * dj);
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            if b.is_constant() {
                return Self::one();
            }
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    pub fn eval(&self, at: &Cyclotomic) -> Cyclotomic {
        self.coeffs
            .iter()
            .rev()
            .fold(Cyclotomic::zero(), |acc, c| &(&acc * at) + c)
    }

    /// Galois action coefficient-wise (see [`Cyclotomic::galois`]); the
    /// conductor used is `n`, which must be a multiple of every coefficient's.
    pub fn galois(&self, n: u64, j: i64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.embed(n).galois(j)).collect())
    }

    /// Coefficients as rationals, if all of them are.
    pub fn to_rationals(&self) -> Result<Vec<Rational>> {
        self.coeffs.iter().map(Cyclotomic::to_rational).collect()
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Cyclotomic::zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                if negate {
                    a - b
                } else {
                    a + b
                }
            })
            .collect();
        Self::new(coeffs)
    }
}

/// Substitutes `y` by the value `v` exactly.
pub fn eval_y(p: &YPoly, v: &Cyclotomic) -> Cyclotomic {
    p.eval(v)
}

impl Add<&YPoly> for &YPoly {
    type Output = YPoly;
    fn add(self, rhs: &YPoly) -> YPoly {
        self.combine(rhs, false)
    }
}

impl Sub<&YPoly> for &YPoly {
    type Output = YPoly;
    fn sub(self, rhs: &YPoly) -> YPoly {
        self.combine(rhs, true)
    }
}

impl Mul<&YPoly> for &YPoly {
    type Output = YPoly;
    fn mul(self, rhs: &YPoly) -> YPoly {
        if self.is_zero() || rhs.is_zero() {
            return YPoly::zero();
        }
        let mut out = vec![Cyclotomic::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        YPoly::new(out)
    }
}

impl Neg for &YPoly {
    type Output = YPoly;
    fn neg(self) -> YPoly {
        YPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for YPoly {
    type Output = YPoly;
    fn add(self, rhs: YPoly) -> YPoly {
        &self + &rhs
    }
}

impl Sub for YPoly {
    type Output = YPoly;
    fn sub(self, rhs: YPoly) -> YPoly {
        &self - &rhs
    }
}

impl Mul for YPoly {
    type Output = YPoly;
    fn mul(self, rhs: YPoly) -> YPoly {
        &self * &rhs
    }
}

impl fmt::Display for YPoly {
    /// `1 - 19*y + y^2`; irrational coefficients are parenthesised.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let var = match k {
                0 => String::new(),
                1 => "y".to_string(),
                _ => format!("y^{k}"),
            };
            if c.is_rational() {
                let r = c.to_rational().unwrap();
                let neg = r < Rational::from_integer(0.into());
                let mag = if neg { -r } else { r };
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, " {} ", if neg { "-" } else { "+" })?;
                }
                let unit = mag == Rational::from_integer(1.into());
                match (k, unit) {
                    (0, _) => write!(f, "{mag}")?,
                    (_, true) => write!(f, "{var}")?,
                    (_, false) => write!(f, "{mag}*{var}")?,
                }
            } else {
                if !first {
                    write!(f, " + ")?;
                }
                if k == 0 {
                    write!(f, "({c})")?;
                } else {
                    write!(f, "({c})*{var}")?;
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "YPoly({self})")
    }
}

impl serde::Serialize for YPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for YPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(YPoly::new(Vec::<Cyclotomic>::deserialize(d)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::root_of_unity;

    #[test]
    fn division_and_gcd() {
        let a = YPoly::from_ints(&[-1, 0, 1]); // y^2 - 1
        let b = YPoly::from_ints(&[1, 1]); // y + 1
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, YPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&b), b);
        let c = YPoly::from_ints(&[1, 0, 1]);
        assert_eq!(c.gcd(&b), YPoly::one());
        assert_eq!(YPoly::zero().gcd(&YPoly::zero()), YPoly::zero());
    }

    #[test]
    fn gcd_over_cyclotomic_coefficients() {
        // (y - ζ_3)(y - 2) and (y - ζ_3)(y + 1)
        let w = root_of_unity(3, 1);
        let lin = YPoly::linear(-&w, Cyclotomic::one());
        let a = &lin * &YPoly::from_ints(&[-2, 1]);
        let b = &lin * &YPoly::from_ints(&[1, 1]);
        assert_eq!(a.gcd(&b), lin);
    }

    #[test]
    fn evaluation_and_display() {
        let p = YPoly::from_ints(&[1, -19, 1]);
        assert_eq!(p.eval(&Cyclotomic::from_int(-1)), Cyclotomic::from_int(21));
        assert_eq!(p.to_string(), "1 - 19*y + y^2");
        assert_eq!(YPoly::zero().to_string(), "0");
        assert_eq!(YPoly::zero().degree(), None);
        assert_eq!(YPoly::from_ints(&[0, 0, 0]).degree(), None);
        assert_eq!(YPoly::from_ints(&[0, -2]).to_string(), "-2*y");
    }
}
