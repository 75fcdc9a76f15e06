use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::yrational::YRational;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    /// Every coefficient below `precision` vanishes; nothing is known above.
    Zero { precision: i64 },
    /// `coeffs[i]` is the coefficient of `x^(valuation + i)`; `coeffs[0] != 0`.
    Nonzero {
        valuation: i64,
        coeffs: Vec<YRational>,
    },
}

/// Truncated Laurent series in `x` over `YRational` coefficients.
///
/// A nonzero series always has a tight valuation, and carries a relative
/// window `T`: the coefficients of `x^v … x^{v+T-1}` are exact and nothing
/// beyond them is known. Reading outside the window is an error.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    repr: Repr,
}

impl LaurentSeries {
    /// Series from the coefficients of `x^valuation, x^(valuation+1), …`.
    /// Leading zeros are stripped, which shrinks the window accordingly.
    pub fn new(valuation: i64, coeffs: Vec<YRational>) -> Self {
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => LaurentSeries::zero(valuation + coeffs.len() as i64),
            Some(k) => {
                let coeffs = coeffs[k..].to_vec();
                LaurentSeries {
                    repr: Repr::Nonzero {
                        valuation: valuation + k as i64,
                        coeffs,
                    },
                }
            }
        }
    }

    /// An exactly known Laurent polynomial, truncated to relative window
    /// `window` from its true valuation.
    pub fn from_polynomial(shift: i64, coeffs: &[YRational], window: usize) -> Self {
        assert!(window >= 1, "window must be positive");
        let Some(k) = coeffs.iter().position(|c| !c.is_zero()) else {
            return LaurentSeries::zero(i64::MAX / 4);
        };
        let kept = (k..k + window)
            .map(|i| coeffs.get(i).cloned().unwrap_or_else(YRational::zero))
            .collect();
        LaurentSeries {
            repr: Repr::Nonzero {
                valuation: shift + k as i64,
                coeffs: kept,
            },
        }
    }

    /// `O(x^precision)`.
    pub fn zero(precision: i64) -> Self {
        LaurentSeries {
            repr: Repr::Zero { precision },
        }
    }

    pub fn one(window: usize) -> Self {
        Self::from_polynomial(0, &[YRational::one()], window)
    }

    pub fn constant(c: YRational, window: usize) -> Self {
        Self::from_polynomial(0, &[c], window)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { .. })
    }

    pub fn valuation(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero { .. } => None,
            Repr::Nonzero { valuation, .. } => Some(*valuation),
        }
    }

    /// Relative window `T` (0 for the zero series).
    pub fn truncation_len(&self) -> usize {
        match &self.repr {
            Repr::Zero { .. } => 0,
            Repr::Nonzero { coeffs, .. } => coeffs.len(),
        }
    }

    /// First exponent whose coefficient is unknown.
    pub fn precision(&self) -> i64 {
        match &self.repr {
            Repr::Zero { precision } => *precision,
            Repr::Nonzero { valuation, coeffs } => valuation + coeffs.len() as i64,
        }
    }

    pub fn coeffs(&self) -> &[YRational] {
        match &self.repr {
            Repr::Zero { .. } => &[],
            Repr::Nonzero { coeffs, .. } => coeffs,
        }
    }

    /// Coefficient of `x^m`, treating everything below the valuation as an
    /// exact zero. Only indices at or past the window end fail.
    pub fn coeff(&self, m: i64) -> Result<YRational> {
        let end = self.precision();
        if m >= end {
            return Err(Error::WindowExhausted {
                requested: m,
                start: self.valuation().unwrap_or(end),
                end,
            });
        }
        match &self.repr {
            Repr::Zero { .. } => Ok(YRational::zero()),
            Repr::Nonzero { valuation, coeffs } => {
                if m < *valuation {
                    Ok(YRational::zero())
                } else {
                    Ok(coeffs[(m - valuation) as usize].clone())
                }
            }
        }
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let precision = self.precision().min(other.precision());
        let start = match (self.valuation(), other.valuation()) {
            (None, None) => return LaurentSeries::zero(precision),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if start >= precision {
            return LaurentSeries::zero(precision);
        }
        let coeffs = (start..precision)
            .map(|m| {
                let a = self.coeff(m).expect("inside window");
                let b = other.coeff(m).expect("inside window");
                if negate {
                    &a - &b
                } else {
                    &a + &b
                }
            })
            .collect();
        LaurentSeries::new(start, coeffs)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        match (&self.repr, &other.repr) {
            (Repr::Zero { precision }, _) => {
                LaurentSeries::zero(precision + other.valuation().unwrap_or(other.precision()))
            }
            (_, Repr::Zero { precision }) => {
                LaurentSeries::zero(precision + self.valuation().unwrap_or(self.precision()))
            }
            (
                Repr::Nonzero {
                    valuation: va,
                    coeffs: ca,
                },
                Repr::Nonzero {
                    valuation: vb,
                    coeffs: cb,
                },
            ) => {
                let t = ca.len().min(cb.len());
                let coeffs = (0..t)
                    .map(|k| {
                        (0..=k).fold(YRational::zero(), |acc, i| {
                            if ca[i].is_zero() || cb[k - i].is_zero() {
                                acc
                            } else {
                                &acc + &(&ca[i] * &cb[k - i])
                            }
                        })
                    })
                    .collect();
                // leading coefficient is a product of nonzero field elements
                LaurentSeries::new(va + vb, coeffs)
            }
        }
    }

    /// Multiplicative inverse within the window: valuation `-v`, same `T`.
    pub fn reciprocal(&self) -> Result<Self> {
        let Repr::Nonzero { valuation, coeffs } = &self.repr else {
            return Err(Error::ZeroReciprocal);
        };
        let inv0 = coeffs[0].inv().map_err(|_| Error::ZeroReciprocal)?;
        let t = coeffs.len();
        let mut out: Vec<YRational> = Vec::with_capacity(t);
        out.push(inv0.clone());
        for k in 1..t {
            let s = (1..=k).fold(YRational::zero(), |acc, j| {
                if coeffs[j].is_zero() || out[k - j].is_zero() {
                    acc
                } else {
                    &acc + &(&coeffs[j] * &out[k - j])
                }
            });
            out.push(-&(&s * &inv0));
        }
        Ok(LaurentSeries::new(-valuation, out))
    }

    pub fn scale(&self, c: &YRational) -> Self {
        if c.is_zero() {
            return LaurentSeries::zero(self.precision());
        }
        match &self.repr {
            Repr::Zero { .. } => self.clone(),
            Repr::Nonzero { valuation, coeffs } => LaurentSeries {
                repr: Repr::Nonzero {
                    valuation: *valuation,
                    coeffs: coeffs.iter().map(|a| a * c).collect(),
                },
            },
        }
    }

    /// Integer power; negative exponents go through [`Self::reciprocal`].
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 {
            self.reciprocal()?
        } else {
            self.clone()
        };
        let mut acc: Option<LaurentSeries> = None;
        for _ in 0..e.unsigned_abs() {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => &a * &base,
            });
        }
        Ok(acc.unwrap_or_else(|| LaurentSeries::one(self.truncation_len().max(1))))
    }
}

/// Coefficient of `x^m` with the strict contract `v ≤ m < v+T`: anything
/// outside the stored window is reported, never silently zero.
pub fn coeff_x(s: &LaurentSeries, m: i64) -> Result<YRational> {
    let end = s.precision();
    let start = s.valuation().unwrap_or(end);
    if s.is_zero() && m < end {
        return Ok(YRational::zero());
    }
    if m < start || m >= end {
        return Err(Error::WindowExhausted {
            requested: m,
            start,
            end,
        });
    }
    s.coeff(m)
}

impl Add<&LaurentSeries> for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.combine(rhs, false)
    }
}

impl Sub<&LaurentSeries> for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.combine(rhs, true)
    }
}

impl Mul<&LaurentSeries> for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.mul_ref(rhs)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        self.scale(&-&YRational::one())
    }
}

impl fmt::Display for LaurentSeries {
    /// `x^v * (c0 + c1 x + ... + O(x^T))`, coefficients rendered as
    /// `num/den` in `y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Zero { precision } => write!(f, "O(x^{precision})"),
            Repr::Nonzero { valuation, coeffs } => {
                write!(f, "x^{valuation} * (")?;
                for (i, c) in coeffs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    let c = if c.is_polynomial() {
                        format!("({c})/(1)")
                    } else {
                        c.to_string()
                    };
                    match i {
                        0 => write!(f, "{c}")?,
                        1 => write!(f, "{c} x")?,
                        _ => write!(f, "{c} x^{i}")?,
                    }
                }
                write!(f, " + O(x^{}))", coeffs.len())
            }
        }
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Cyclotomic;
    use crate::series::YPoly;

    fn c(v: i64) -> YRational {
        YRational::constant(Cyclotomic::from_int(v))
    }

    #[test]
    fn geometric_series() {
        let one_minus_x = LaurentSeries::from_polynomial(0, &[c(1), c(-1)], 8);
        let g = one_minus_x.reciprocal().unwrap();
        assert_eq!(g.valuation(), Some(0));
        for m in 0..8 {
            assert_eq!(coeff_x(&g, m).unwrap(), c(1));
        }
        assert!(matches!(coeff_x(&g, 8), Err(Error::WindowExhausted { .. })));
        assert!(matches!(
            coeff_x(&g, -1),
            Err(Error::WindowExhausted { .. })
        ));
        assert_eq!(g.coeff(-1).unwrap(), YRational::zero());
    }

    #[test]
    fn reciprocal_flips_valuation() {
        // 3x(1 + x) -> (1/3) x^-1 (1 - x + x^2 - ...)
        let s = LaurentSeries::from_polynomial(1, &[c(3), c(3)], 5);
        let r = s.reciprocal().unwrap();
        assert_eq!(r.valuation(), Some(-1));
        let third = YRational::constant(Cyclotomic::from_rational(&crate::arith::rational(1, 3)));
        assert_eq!(coeff_x(&r, -1).unwrap(), third);
        assert_eq!(coeff_x(&r, 0).unwrap(), -&third);
        assert_eq!(coeff_x(&r, 1).unwrap(), third);
        let prod = &s * &r;
        assert_eq!(prod, LaurentSeries::one(5));
    }

    #[test]
    fn cancellation_shrinks_window() {
        let a = LaurentSeries::from_polynomial(0, &[c(1), c(2), c(3)], 4);
        let b = LaurentSeries::from_polynomial(0, &[c(1), c(2), c(5)], 4);
        let d = &a - &b;
        assert_eq!(d.valuation(), Some(2));
        assert_eq!(d.truncation_len(), 2);
        assert_eq!(coeff_x(&d, 2).unwrap(), c(-2));
        let z = &a - &a;
        assert!(z.is_zero());
        assert_eq!(z.precision(), 4);
        assert_eq!(coeff_x(&z, 3).unwrap(), YRational::zero());
        assert!(z.reciprocal().is_err());
    }

    #[test]
    fn rational_function_coefficients() {
        // 1/((1 + y) + x) = 1/(1+y) - x/(1+y)^2 + ...
        let one_plus_y = YRational::from_poly(YPoly::from_ints(&[1, 1]));
        let s = LaurentSeries::from_polynomial(0, &[one_plus_y.clone(), c(1)], 3);
        let r = s.reciprocal().unwrap();
        let inv = one_plus_y.inv().unwrap();
        assert_eq!(coeff_x(&r, 0).unwrap(), inv);
        assert_eq!(coeff_x(&r, 1).unwrap(), -&(&inv * &inv));
    }

    #[test]
    fn display_form() {
        let s = LaurentSeries::from_polynomial(-1, &[c(1), c(-2)], 2);
        assert_eq!(s.to_string(), "x^-1 * ((1)/(1) + (-2)/(1) x + O(x^2))");
    }
}
