//! Truncated Laurent series in `x` with coefficients in `Q(ζ)(y)`, and the
//! generating series `Ψ_{γ,e}` and `Φ_dd` used by the trace formulas.

mod laurent;
mod ypoly;
mod yrational;

pub use laurent::{coeff_x, LaurentSeries};
pub use ypoly::{eval_y, YPoly};
pub use yrational::{assert_polynomial, YRational};

use crate::arith::{binomial, Cyclotomic};
use crate::error::{Error, Result};

fn binom(e: u32, k: u32) -> Cyclotomic {
    Cyclotomic::from_bigint(binomial(e as u64, k as u64).into())
}

/// `x`-coefficients of `(1 + x y)^e`.
fn one_plus_xy_pow(e: u32) -> Vec<YPoly> {
    (0..=e)
        .map(|k| YPoly::monomial(binom(e, k), k as usize))
        .collect()
}

/// `x`-coefficients of `(1 - x)^e`.
fn one_minus_x_pow(e: u32) -> Vec<Cyclotomic> {
    (0..=e)
        .map(|k| {
            let b = binom(e, k);
            if k % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .collect()
}

fn to_series(coeffs: Vec<YPoly>, window: usize) -> LaurentSeries {
    let coeffs: Vec<YRational> = coeffs.into_iter().map(YRational::from_poly).collect();
    LaurentSeries::from_polynomial(0, &coeffs, window)
}

/// `Ψ_{γ,e}(x,y) = [γ(1+xy)^e + y(1−x)^e] / [γ(1+xy)^e − (1−x)^e]`.
///
/// The valuation is 0 when `γ ≠ 1` (constant term `(γ+y)/(γ−1)`) and −1
/// when `γ = 1`, where the denominator loses its constant term.
pub fn psi(gamma: &Cyclotomic, e: u32, window: usize) -> Result<LaurentSeries> {
    if e == 0 {
        return Err(Error::invalid("psi needs e >= 1"));
    }
    if gamma.is_zero() {
        return Err(Error::invalid("psi needs gamma != 0"));
    }
    if window == 0 {
        return Err(Error::invalid("window must be positive"));
    }
    let a = one_plus_xy_pow(e);
    let b = one_minus_x_pow(e);
    let y = YPoly::monomial(Cyclotomic::one(), 1);
    let (num, den): (Vec<YPoly>, Vec<YPoly>) = a
        .iter()
        .zip(&b)
        .map(|(ak, bk)| {
            let ga = ak.scale(gamma);
            let num = &ga + &y.scale(bk);
            let den = &ga - &YPoly::constant(bk.clone());
            (num, den)
        })
        .unzip();
    // the denominator may lose one leading term; keep `window` after stripping
    let num = to_series(num, window);
    let den = to_series(den, window);
    Ok(&num * &den.reciprocal()?)
}

/// `1/((1 + x y)(1 − x))`, the series attached to the empty multidegree.
pub fn phi_empty(window: usize) -> LaurentSeries {
    // (1 + xy)(1 - x) = 1 + (y - 1) x - y x^2
    let p = vec![
        YPoly::one(),
        YPoly::from_ints(&[-1, 1]),
        YPoly::from_ints(&[0, -1]),
    ];
    to_series(p, window)
        .reciprocal()
        .expect("constant term is 1")
}

/// `Φ_dd = 1/((1+xy)(1−x)) · Π_i [(1+xy)^{d_i} − (1−x)^{d_i}] / [(1+xy)^{d_i} + y(1−x)^{d_i}]`,
/// built directly from the quotient (not through `Ψ`). Valuation is `r`.
pub fn phi_multidegree(dd: &[u32], window: usize) -> Result<LaurentSeries> {
    if dd.contains(&0) {
        return Err(Error::invalid("multidegree entries must be >= 1"));
    }
    if window == 0 {
        return Err(Error::invalid("window must be positive"));
    }
    let y = YPoly::monomial(Cyclotomic::one(), 1);
    let mut acc = phi_empty(window);
    for &d in dd {
        let a = one_plus_xy_pow(d);
        let b = one_minus_x_pow(d);
        let (num, den): (Vec<YPoly>, Vec<YPoly>) = a
            .iter()
            .zip(&b)
            .map(|(ak, bk)| (ak - &YPoly::constant(bk.clone()), ak + &y.scale(bk)))
            .unzip();
        let num = to_series(num, window);
        let den = to_series(den, window);
        acc = &acc * &(&num * &den.reciprocal()?);
    }
    Ok(acc)
}

/// `h^k` under the substitution `h = (1 + x y)/(1 − x)`, for any integer `k`.
pub fn h_power(k: i64, window: usize) -> Result<LaurentSeries> {
    let h = to_series(
        vec![YPoly::one(), YPoly::monomial(Cyclotomic::one(), 1)],
        window,
    );
    let one_minus_x = to_series(vec![YPoly::one(), YPoly::from_ints(&[-1])], window);
    let h = &h * &one_minus_x.reciprocal()?;
    h.pow(k)
}
