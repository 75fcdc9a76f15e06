use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::ypoly::YPoly;
use crate::arith::Cyclotomic;
use crate::error::{Error, Result};

/// Rational function `num/den` in `y`, kept in lowest terms with a monic
/// denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct YRational {
    num: YPoly,
    den: YPoly,
}

impl YRational {
    pub fn new(num: YPoly, den: YPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: YPoly, den: YPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let c = den.coeff(0);
            if c.is_one() {
                return YRational { num, den };
            }
            let inv = c.inv().expect("nonzero denominator");
            return YRational {
                num: num.scale(&inv),
                den: YPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_rem(&g).unwrap().0, den.div_rem(&g).unwrap().0)
        };
        let lead_inv = den
            .leading()
            .unwrap()
            .inv()
            .expect("nonzero leading coefficient");
        YRational {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        }
    }

    pub fn zero() -> Self {
        YRational {
            num: YPoly::zero(),
            den: YPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(YPoly::one())
    }

    pub fn from_poly(p: YPoly) -> Self {
        YRational {
            num: p,
            den: YPoly::one(),
        }
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::from_poly(YPoly::constant(c))
    }

    pub fn numer(&self) -> &YPoly {
        &self.num
    }

    pub fn denom(&self) -> &YPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        YRational {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Exact substitution `y = v`; fails if the denominator vanishes there.
    pub fn eval(&self, v: &Cyclotomic) -> Result<Cyclotomic> {
        let d = self.den.eval(v);
        self.num.eval(v).checked_div(&d)
    }

    fn add_signed(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let rhs_num = if negate {
            -&other.num
        } else {
            other.num.clone()
        };
        if self.den == other.den {
            return Self::reduced(&self.num + &rhs_num, self.den.clone());
        }
        let num = &(&self.num * &other.den) + &(&rhs_num * &self.den);
        Self::reduced(num, &self.den * &other.den)
    }
}

/// Returns the polynomial `r` is equal to, or `NotPolynomial` if the
/// denominator does not divide the numerator.
pub fn assert_polynomial(r: &YRational) -> Result<YPoly> {
    if r.is_polynomial() {
        Ok(r.num.scale(&r.den.coeff(0).inv()?))
    } else {
        Err(Error::NotPolynomial(r.to_string()))
    }
}

impl Add<&YRational> for &YRational {
    type Output = YRational;
    fn add(self, rhs: &YRational) -> YRational {
        self.add_signed(rhs, false)
    }
}

impl Sub<&YRational> for &YRational {
    type Output = YRational;
    fn sub(self, rhs: &YRational) -> YRational {
        self.add_signed(rhs, true)
    }
}

impl Mul<&YRational> for &YRational {
    type Output = YRational;
    fn mul(self, rhs: &YRational) -> YRational {
        if self.is_zero() || rhs.is_zero() {
            return YRational::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return YRational {
                num: &self.num * &rhs.num,
                den: YPoly::one(),
            };
        }
        YRational::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &YRational {
    type Output = YRational;
    fn neg(self) -> YRational {
        YRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for YRational {
    type Output = YRational;
    fn add(self, rhs: YRational) -> YRational {
        &self + &rhs
    }
}

impl Sub for YRational {
    type Output = YRational;
    fn sub(self, rhs: YRational) -> YRational {
        &self - &rhs
    }
}

impl Mul for YRational {
    type Output = YRational;
    fn mul(self, rhs: YRational) -> YRational {
        &self * &rhs
    }
}

impl From<YPoly> for YRational {
    fn from(p: YPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for YRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for YRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "YRational({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> YPoly {
        YPoly::from_ints(c)
    }

    #[test]
    fn assert_polynomial_examples() {
        let r = YRational::new(p(&[-1, 0, 1]), p(&[1, 1])).unwrap();
        assert_eq!(assert_polynomial(&r).unwrap(), p(&[-1, 1]));
        let r = YRational::new(p(&[1, 0, 1]), p(&[1, 1])).unwrap();
        assert!(matches!(
            assert_polynomial(&r),
            Err(Error::NotPolynomial(_))
        ));
        // constant denominators are absorbed
        let r = YRational::new(p(&[2, 4]), p(&[2])).unwrap();
        assert_eq!(assert_polynomial(&r).unwrap(), p(&[1, 2]));
    }

    #[test]
    fn normal_form() {
        let r = YRational::new(p(&[2, 2]), p(&[2, 0, -2])).unwrap();
        // (2+2y)/(2-2y^2) = 1/(1-y) = -1/(y-1)
        assert_eq!(r.numer(), &p(&[-1]));
        assert_eq!(r.denom(), &p(&[-1, 1]));
        assert!(YRational::new(p(&[1]), YPoly::zero()).is_err());
    }

    #[test]
    fn field_arithmetic() {
        let a = YRational::new(p(&[1]), p(&[1, 1])).unwrap();
        let b = YRational::new(p(&[0, 1]), p(&[1, 1])).unwrap();
        assert_eq!(&a + &b, YRational::one());
        assert_eq!(&a * &a.inv().unwrap(), YRational::one());
        assert!((&a - &a).is_zero());
        assert_eq!(
            b.eval(&Cyclotomic::from_int(1)).unwrap(),
            Cyclotomic::from_rational(&crate::arith::rational(1, 2))
        );
        assert_eq!(
            a.eval(&Cyclotomic::from_int(-1)),
            Err(Error::DivisionByZero)
        );
    }
}
