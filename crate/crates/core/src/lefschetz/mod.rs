//! Equivariant `χ_y` characteristics and traces on primitive cohomology.
//!
//! Every trace is a sum over fixed components of an extracted coefficient
//! `[x^m]{Φ_dd · Π Ψ^{m_i}}`. The series windows are sized from the known
//! valuations of the factors, so a `WindowExhausted` error always points at
//! a sizing bug rather than a silent truncation.

mod spectrum;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub use spectrum::{HypersurfaceAction, Spectrum};

use crate::arith::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::series::{
    assert_polynomial, h_power, phi_multidegree, psi, LaurentSeries, YPoly, YRational,
};

/// Default number of extra coefficients kept past the extraction index.
pub const DEFAULT_WINDOW_SLACK: usize = 2;

/// One summand `m·(H^e, α)` of a strongly polynomial bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleTerm {
    pub exponent: i64,
    pub alpha: Cyclotomic,
    pub mult: i64,
}

/// `Σ_i m_i (H^{e_i}, α_i)` with every `α_i ≠ 0` and every `m_i ≠ 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleSpec {
    terms: Vec<BundleTerm>,
}

impl BundleSpec {
    pub fn new(terms: impl IntoIterator<Item = BundleTerm>) -> Result<Self> {
        let mut out = Vec::new();
        for t in terms {
            if t.alpha.is_zero() {
                return Err(Error::invalid("bundle eigenvalues must be nonzero"));
            }
            if t.mult != 0 {
                out.push(t);
            }
        }
        Ok(BundleSpec { terms: out })
    }

    pub fn terms(&self) -> &[BundleTerm] {
        &self.terms
    }

    /// The series `F = Π_i Ψ_{1/α_i, e_i}^{m_i}` and its exact valuation.
    fn series(&self, window: usize) -> Result<LaurentSeries> {
        let mut acc = LaurentSeries::one(window);
        for t in &self.terms {
            let e = u32::try_from(t.exponent)
                .ok()
                .filter(|&e| e >= 1)
                .ok_or_else(|| Error::invalid("bundle exponents must be >= 1"))?;
            let factor = psi(&t.alpha.inv()?, e, window)?.pow(t.mult)?;
            acc = &acc * &factor;
        }
        Ok(acc)
    }

    /// Valuation of [`Self::series`]: each `Ψ_{1,e}` has a simple pole.
    fn valuation(&self) -> i64 {
        self.terms
            .iter()
            .filter(|t| t.alpha.is_one())
            .map(|t| -t.mult)
            .sum()
    }
}

/// A fixed component `Z ⊂ P^{m_Z}`, complete intersection of multidegree
/// `dd_Z`, with its normal bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedComponentData {
    pub ambient_dim: u32,
    pub multidegree: Vec<u32>,
    pub normal_bundle: BundleSpec,
}

/// Laurent polynomial `Σ c_k h^k` in the hyperplane class.
pub type HLaurent = BTreeMap<i64, Cyclotomic>;

fn window_for(target: i64, valuation: i64, slack: usize) -> usize {
    (target - valuation + 1).max(1) as usize + slack
}

fn alternating_projective(n_plus_1: u32) -> YPoly {
    // Σ_{p=0}^{n+1} (−y)^p
    YPoly::from_ints(
        &(0..=n_plus_1)
            .map(|p| if p % 2 == 0 { 1 } else { -1 })
            .collect::<Vec<_>>(),
    )
}

fn minus_y_pow(k: u32) -> YPoly {
    let sign = if k % 2 == 0 { 1 } else { -1 };
    YPoly::monomial(Cyclotomic::from_int(sign), k as usize)
}

fn sign_pow(n: u32) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Trace engine with a configurable window slack; the free functions of this
/// module use [`DEFAULT_WINDOW_SLACK`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceEngine {
    pub window_slack: usize,
}

impl Default for TraceEngine {
    fn default() -> Self {
        TraceEngine {
            window_slack: DEFAULT_WINDOW_SLACK,
        }
    }
}

impl TraceEngine {
    pub fn new(window_slack: usize) -> Self {
        TraceEngine { window_slack }
    }

    /// `χ_y(Z, f(H)) = [x^m]{Φ_dd(x,y) · f((1+xy)/(1−x))}`.
    pub fn chi_y_complete_intersection(&self, dd: &[u32], m: u32, f: &HLaurent) -> Result<YPoly> {
        let r = dd.len() as i64;
        let window = window_for(m as i64, r, self.window_slack);
        let mut fs = LaurentSeries::zero(window as i64);
        for (&k, c) in f {
            if c.is_zero() {
                continue;
            }
            let term = h_power(k, window)?.scale(&YRational::constant(c.clone()));
            fs = &fs + &term;
        }
        let s = &phi_multidegree(dd, window)? * &fs;
        assert_polynomial(&s.coeff(m as i64)?)
    }

    /// One fixed-component contribution `[x^{m_Z}]{Φ_{dd_Z} · F_Z}`, before
    /// the polynomial check.
    fn component_term(&self, c: &FixedComponentData) -> Result<YRational> {
        let valuation = c.multidegree.len() as i64 + c.normal_bundle.valuation();
        let window = window_for(c.ambient_dim as i64, valuation, self.window_slack);
        let s = &phi_multidegree(&c.multidegree, window)? * &c.normal_bundle.series(window)?;
        s.coeff(c.ambient_dim as i64)
    }

    /// `Σ_Z [x^{m_Z}]{Φ_{dd_Z} · Π_i Ψ_{1/α_i, e_i}^{m_i}}`.
    pub fn chi_y_components(&self, components: &[FixedComponentData]) -> Result<YPoly> {
        let mut total = YRational::zero();
        for c in components {
            total = &total + &self.component_term(c)?;
        }
        assert_polynomial(&total)
    }

    /// Sum over the eigencomponents `P(V_α)` of the fixed locus of a
    /// projective transformation, checked against `Σ_{p=0}^{n+1} (−y)^p`.
    pub fn chi_y_projective(&self, s: &Spectrum) -> Result<YPoly> {
        if s.dim() < 2 {
            return Err(Error::invalid("projective space needs dim V >= 2"));
        }
        let got = self.chi_y_components(&projective_components(s))?;
        let expected = alternating_projective(s.dim() - 1);
        if got != expected {
            return Err(Error::InternalMismatch(format!(
                "projective component sum {got} differs from {expected} for spectrum {s}"
            )));
        }
        Ok(got)
    }

    /// The series whose `x^{m_α−1}` coefficient is the contribution of the
    /// eigenvalue `ζ_N^k` to the hypersurface trace.
    fn hypersurface_term(
        &self,
        a: &HypersurfaceAction,
        k: u64,
        subtract_one: bool,
    ) -> Result<YRational> {
        let s = a.spectrum();
        let n = s.conductor();
        let d = a.degree();
        let m_alpha = s.mult(k as i64);
        let target = m_alpha as i64 - 1;
        let window = window_for(target, -1, self.window_slack);
        let mut acc = phi_multidegree(&[], window)?;
        for (kb, mb) in s.iter() {
            if kb == k {
                continue;
            }
            let ratio = Cyclotomic::root_of_unity(n, k as i64 - kb as i64);
            acc = &acc * &psi(&ratio, 1, window)?.pow(mb as i64)?;
        }
        let alpha_d = Cyclotomic::root_of_unity(n, (k * d as u64) as i64);
        let mut h = psi(&alpha_d, d, window)?.reciprocal()?;
        if subtract_one {
            h = &h - &LaurentSeries::one(window);
        }
        acc = &acc * &h;
        acc.coeff(target)
    }

    /// `χ_y(X, σ) = Σ_α [x^{m_α−1}]{ Φ_∅ · Ψ_{α^d,d}^{−1} · Π_{β≠α} Ψ_{α/β,1}^{m_β} }`.
    pub fn chi_y_hypersurface(&self, a: &HypersurfaceAction) -> Result<YPoly> {
        let mut total = YRational::zero();
        for (k, _) in a.spectrum().iter() {
            total = &total + &self.hypersurface_term(a, k, false)?;
        }
        let p = assert_polynomial(&total)?;
        check_degree(&p, a.n(), "chi_y_hypersurface")?;
        Ok(p)
    }

    /// Same trace through the generic component machinery, with the fixed
    /// locus described component by component.
    pub fn chi_y_hypersurface_by_components(&self, a: &HypersurfaceAction) -> Result<YPoly> {
        self.chi_y_components(&hypersurface_components(a))
    }

    /// `χ_y^prim` through `(−1)^n χ_y^prim = χ_y(X) − χ_y(P) + (−y)^{n+1}`.
    /// The coefficient of `y^p` is `(−1)^p tr(σ*, H^{p,n−p}_prim)`.
    pub fn chi_y_primitive(&self, a: &HypersurfaceAction) -> Result<YPoly> {
        let n = a.n();
        if n < 1 {
            return Err(Error::invalid("primitive traces need n >= 1"));
        }
        let x = self.chi_y_hypersurface(a)?;
        let p = self.chi_y_projective(a.spectrum())?;
        let inner = &(&x - &p) + &minus_y_pow(n + 1);
        let out = inner.scale(&Cyclotomic::from_int(sign_pow(n)));
        check_degree(&out, n, "chi_y_primitive")?;
        Ok(out)
    }

    /// `χ_y^prim` from the direct component sum
    /// `(−1)^n [(−y)^{n+1} + Σ_α [x^{m_α−1}]{Φ_∅ (Ψ_{α^d,d}^{−1} − 1) Π Ψ_{α/β,1}^{m_β}}]`.
    /// Kept as an independent cross-check of [`Self::chi_y_primitive`].
    pub fn chi_y_primitive_direct(&self, a: &HypersurfaceAction) -> Result<YPoly> {
        let n = a.n();
        if n < 1 {
            return Err(Error::invalid("primitive traces need n >= 1"));
        }
        let mut total = YRational::from_poly(minus_y_pow(n + 1));
        for (k, _) in a.spectrum().iter() {
            total = &total + &self.hypersurface_term(a, k, true)?;
        }
        let out = assert_polynomial(&total)?.scale(&Cyclotomic::from_int(sign_pow(n)));
        check_degree(&out, n, "chi_y_primitive_direct")?;
        Ok(out)
    }

    /// Primitive Hodge numbers `h^{p,n−p}_prim`, `p = 0..=n`, read off the
    /// primitive characteristic of the identity.
    pub fn primitive_hodge_numbers(&self, n: u32, d: u32) -> Result<Vec<BigInt>> {
        if n < 1 || d < 2 {
            return Err(Error::invalid(
                "primitive Hodge numbers need n >= 1, d >= 2",
            ));
        }
        let a = HypersurfaceAction::trivial(n, d)?;
        let chi = self.chi_y_primitive(&a)?;
        let mut out = Vec::with_capacity(n as usize + 1);
        for p in 0..=n {
            let c = chi.coeff(p as usize);
            let v = c.to_integer().ok_or_else(|| {
                Error::InternalMismatch(format!("coefficient of y^{p} is not an integer: {c}"))
            })?;
            let h = if p % 2 == 0 { v } else { -v };
            if h.is_negative() {
                return Err(Error::InternalMismatch(format!(
                    "coefficient of y^{p} has the wrong sign in {chi}"
                )));
            }
            out.push(h);
        }
        let total: BigInt = out.iter().sum();
        let dim = primitive_dimension(n, d as u64);
        if total != dim {
            return Err(Error::InternalMismatch(format!(
                "primitive Hodge numbers sum to {total}, expected {dim}"
            )));
        }
        Ok(out)
    }
}

fn check_degree(p: &YPoly, n: u32, what: &str) -> Result<()> {
    match p.degree() {
        Some(deg) if deg > n as usize => Err(Error::InternalMismatch(format!(
            "{what}: y-degree {deg} exceeds n = {n} in {p}"
        ))),
        _ => Ok(()),
    }
}

/// Fixed components `P(V_α)` of a projective transformation of `P(V)`, with
/// normal bundles `Σ_{β≠α} m_β (H, β/α)`.
pub fn projective_components(s: &Spectrum) -> Vec<FixedComponentData> {
    let n = s.conductor();
    s.iter()
        .map(|(k, m)| {
            let terms = s
                .iter()
                .filter(|&(kb, _)| kb != k)
                .map(|(kb, mb)| BundleTerm {
                    exponent: 1,
                    alpha: Cyclotomic::root_of_unity(n, kb as i64 - k as i64),
                    mult: mb as i64,
                });
            FixedComponentData {
                ambient_dim: m - 1,
                multidegree: vec![],
                normal_bundle: BundleSpec::new(terms).expect("roots of unity are nonzero"),
            }
        })
        .collect()
}

/// Fixed components `X_α = X ∩ P(V_α)` of a hypersurface: a degree-`d`
/// hypersurface of `P(V_α)` when `α^d = 1`, the whole of `P(V_α)` otherwise.
pub fn hypersurface_components(a: &HypersurfaceAction) -> Vec<FixedComponentData> {
    let s = a.spectrum();
    let n = s.conductor();
    let d = a.degree();
    projective_components(s)
        .into_iter()
        .zip(s.iter())
        .map(|(mut c, (k, _))| {
            let alpha_d = Cyclotomic::root_of_unity(n, (k * d as u64) as i64);
            if alpha_d.is_one() {
                c.multidegree = vec![d];
            } else {
                let mut terms = c.normal_bundle.terms().to_vec();
                terms.push(BundleTerm {
                    exponent: d as i64,
                    alpha: alpha_d.inv().expect("root of unity"),
                    mult: -1,
                });
                c.normal_bundle = BundleSpec::new(terms).expect("roots of unity are nonzero");
            }
            c
        })
        .collect()
}

/// `tr(σ*, H^n_prim) = ((−1)^n/d) Σ_{α^d=1} (1−d)^{m_α}`, the sum running over
/// all `d`-th roots of unity (absent ones contribute 1).
pub fn trace_primitive(a: &HypersurfaceAction) -> Cyclotomic {
    let d = a.degree() as u64;
    let base = BigInt::from(1) - BigInt::from(d);
    let sum: BigInt = (0..d as i64)
        .map(|j| num_traits::pow(base.clone(), a.spectrum().mult_of_root(d, j) as usize))
        .sum();
    let r = Rational::new(sum * sign_pow(a.n()), BigInt::from(d));
    Cyclotomic::from_rational(&r)
}

/// `((d−1)^{n+2} + (−1)^n (d−1)) / d`.
pub fn primitive_dimension(n: u32, d: u64) -> BigInt {
    assert!(d >= 1, "degree must be positive");
    let dm1 = BigInt::from(d - 1);
    let num = num_traits::pow(dm1.clone(), n as usize + 2) + dm1 * sign_pow(n);
    let d = BigInt::from(d);
    assert!(
        (&num % &d).is_zero(),
        "primitive dimension must be integral"
    );
    num / d
}

pub fn chi_y_complete_intersection(dd: &[u32], m: u32, f: &HLaurent) -> Result<YPoly> {
    TraceEngine::default().chi_y_complete_intersection(dd, m, f)
}

pub fn chi_y_components(components: &[FixedComponentData]) -> Result<YPoly> {
    TraceEngine::default().chi_y_components(components)
}

pub fn chi_y_projective(s: &Spectrum) -> Result<YPoly> {
    TraceEngine::default().chi_y_projective(s)
}

pub fn chi_y_hypersurface(a: &HypersurfaceAction) -> Result<YPoly> {
    TraceEngine::default().chi_y_hypersurface(a)
}

pub fn chi_y_primitive(a: &HypersurfaceAction) -> Result<YPoly> {
    TraceEngine::default().chi_y_primitive(a)
}

pub fn primitive_hodge_numbers(n: u32, d: u32) -> Result<Vec<BigInt>> {
    TraceEngine::default().primitive_hodge_numbers(n, d)
}

/// `f = 1`.
pub fn unit_laurent() -> HLaurent {
    BTreeMap::from([(0, Cyclotomic::one())])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::eval_y;

    fn action(d: u32, s: &str) -> HypersurfaceAction {
        HypersurfaceAction::new(d, Spectrum::parse(s).unwrap()).unwrap()
    }

    fn poly(c: &[i64]) -> YPoly {
        YPoly::from_ints(c)
    }

    fn int(v: i64) -> Cyclotomic {
        Cyclotomic::from_int(v)
    }

    #[test]
    fn complete_intersection_examples() {
        let one = unit_laurent();
        assert_eq!(
            chi_y_complete_intersection(&[], 3, &one).unwrap(),
            poly(&[1, -1, 1, -1])
        );
        assert_eq!(
            chi_y_complete_intersection(&[3], 2, &one).unwrap(),
            YPoly::zero()
        );
        assert_eq!(
            chi_y_complete_intersection(&[4], 3, &one).unwrap(),
            poly(&[2, -20, 2])
        );
        // quadric surface P^1 x P^1: h^{1,1} = 2
        assert_eq!(
            chi_y_complete_intersection(&[2], 3, &one).unwrap(),
            poly(&[1, -2, 1])
        );
    }

    #[test]
    fn twisted_line_bundles_on_projective_line() {
        // χ_y(P^1, O(k)) = χ(O(k)) + y·χ(O(k−2)) = (k+1) + (k−1)y
        for k in -3i64..=3 {
            let f = BTreeMap::from([(k, Cyclotomic::one())]);
            let got = chi_y_complete_intersection(&[], 1, &f).unwrap();
            assert_eq!(got, poly(&[k + 1, k - 1]), "k = {k}");
        }
    }

    #[test]
    fn components_examples() {
        let single = FixedComponentData {
            ambient_dim: 2,
            multidegree: vec![],
            normal_bundle: BundleSpec::default(),
        };
        assert_eq!(chi_y_components(&[single]).unwrap(), poly(&[1, -1, 1]));
        let s = Spectrum::parse("3: 0, 1, 2").unwrap();
        let comps = projective_components(&s);
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| c.ambient_dim == 0));
        assert_eq!(chi_y_components(&comps).unwrap(), poly(&[1, -1, 1]));
    }

    #[test]
    fn projective_examples() {
        assert_eq!(
            chi_y_projective(&Spectrum::trivial(3).unwrap()).unwrap(),
            poly(&[1, -1, 1])
        );
        let s = Spectrum::parse("6: 0, 2, 3").unwrap();
        assert_eq!(chi_y_projective(&s).unwrap(), poly(&[1, -1, 1]));
        assert_eq!(
            chi_y_projective(&Spectrum::trivial(2).unwrap()).unwrap(),
            poly(&[1, -1])
        );
    }

    #[test]
    fn hypersurface_examples() {
        assert_eq!(
            chi_y_hypersurface(&action(3, "1: 0^3")).unwrap(),
            YPoly::zero()
        );
        assert_eq!(
            chi_y_hypersurface(&action(4, "1: 0^4")).unwrap(),
            poly(&[2, -20, 2])
        );
        let inv = chi_y_hypersurface(&action(4, "2: 0^3, 1^1")).unwrap();
        // total trace = e(fixed locus) = e(plane quartic) = -4
        assert_eq!(eval_y(&inv, &int(-1)), int(-4));
    }

    #[test]
    fn component_route_matches() {
        for (d, s) in [
            (4, "2: 0^3, 1^1"),
            (3, "3: 0^2, 1^1, 2^1"),
            (3, "6: 1^2, 4^2"),
        ] {
            let a = action(d, s);
            assert_eq!(
                chi_y_hypersurface(&a).unwrap(),
                TraceEngine::default()
                    .chi_y_hypersurface_by_components(&a)
                    .unwrap(),
                "{s}"
            );
        }
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(
            chi_y_primitive(&action(4, "1: 0^4")).unwrap(),
            poly(&[1, -19, 1])
        );
        assert_eq!(
            chi_y_primitive(&action(3, "1: 0^3")).unwrap(),
            poly(&[1, -1])
        );
        for (d, s) in [
            (4, "2: 0^3, 1^1"),
            (3, "3: 0^2, 1^1, 2^1"),
            (5, "5: 0, 1, 2, 3, 4"),
        ] {
            let a = action(d, s);
            let chi = chi_y_primitive(&a).unwrap();
            assert_eq!(eval_y(&chi, &int(-1)), trace_primitive(&a), "{s}");
            assert_eq!(
                TraceEngine::default().chi_y_primitive_direct(&a).unwrap(),
                chi
            );
        }
        assert!(chi_y_primitive(&action(3, "1: 0^2")).is_err());
    }

    #[test]
    fn trace_examples() {
        assert_eq!(trace_primitive(&action(4, "1: 0^4")), int(21));
        assert_eq!(trace_primitive(&action(4, "2: 0^3, 1^1")), int(-7));
        assert_eq!(trace_primitive(&action(3, "1: 0^3")), int(2));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(primitive_dimension(2, 4), BigInt::from(21));
        assert_eq!(primitive_dimension(3, 5), BigInt::from(204));
        for n in 0..5 {
            assert_eq!(primitive_dimension(n, 1), BigInt::zero());
        }
        assert_eq!(primitive_dimension(0, 3), BigInt::from(2));
    }

    #[test]
    fn hodge_number_examples() {
        let h = |n, d| -> Vec<i64> {
            primitive_hodge_numbers(n, d)
                .unwrap()
                .into_iter()
                .map(|v| i64::try_from(v).unwrap())
                .collect()
        };
        assert_eq!(h(2, 4), vec![1, 19, 1]);
        assert_eq!(h(1, 3), vec![1, 1]);
        assert_eq!(h(3, 5), vec![1, 101, 101, 1]);
        // plane quartic has genus 3
        assert_eq!(h(1, 4), vec![3, 3]);
    }

    #[test]
    fn window_slack_zero_still_suffices() {
        let e = TraceEngine::new(0);
        assert_eq!(
            e.chi_y_primitive(&action(4, "1: 0^4")).unwrap(),
            poly(&[1, -19, 1])
        );
    }

    #[test]
    fn trace_ignores_non_root_eigenvalues() {
        // only eigenvalues with α^d = 1 enter the closed form
        let a = action(3, "9: 0^2, 1^1, 3^1");
        let b = action(3, "9: 0^2, 2^1, 3^1");
        assert_eq!(trace_primitive(&a), trace_primitive(&b));
        assert!(trace_primitive(&a).is_rational());
    }
}
