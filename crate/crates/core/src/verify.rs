//! The acceptance suites, shared by `equitrace verify-all` and the
//! `acceptance` test target. Every comparison is exact.

use std::fmt;

use num_bigint::BigInt;
use num_traits::pow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::numtheory::{binomial, gcd, prime_power};
use crate::arith::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::lefschetz::{
    projective_components, trace_primitive, unit_laurent, HypersurfaceAction, Spectrum, TraceEngine,
};
use crate::oracles::{
    count_fixed_points_m, count_orbits_by_shape, euler_fixed_locus_trace, exists_smooth_symmetric,
    fermat_section_singular,
};
use crate::series::YPoly;
use crate::symgroup::{
    c_mu, chi_m, decompose, find_min_alpha, is_character, partitions, schur_multiplicity_theta,
    sign_multiplicity, signed_theta_tilde, theta, theta_tilde, trivial_multiplicity,
    type_i_character, type_ii_character, AbelianGroupSpec,
};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;
pub const CRITERIA: std::ops::RangeInclusive<u32> = 1..=9;

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub window_slack: usize,
    pub enumeration_cap: u64,
    pub alpha_cap: u32,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            window_slack: crate::lefschetz::DEFAULT_WINDOW_SLACK,
            enumeration_cap: crate::oracles::DEFAULT_ENUMERATION_CAP,
            alpha_cap: crate::symgroup::DEFAULT_ALPHA_CAP,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub checks: u64,
    /// First failure, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    /// Recorded observations that do not count as failures.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "criterion {} [{}]: {verdict} ({} exact checks)",
            self.id, self.name, self.checks
        )?;
        if let Some(msg) = &self.failure {
            write!(f, ": {msg}")?;
        }
        for note in &self.notes {
            write!(f, "\n    note: {note}")?;
        }
        Ok(())
    }
}

/// Counts checks and collects notes; `check` turns a mismatch into an error.
struct Tally {
    checks: u64,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) -> Result<()> {
        self.checks += 1;
        if ok {
            Ok(())
        } else {
            Err(Error::InternalMismatch(what()))
        }
    }

    fn eq<T: PartialEq + fmt::Display>(
        &mut self,
        got: &T,
        want: &T,
        ctx: impl FnOnce() -> String,
    ) -> Result<()> {
        self.check(got == want, || {
            format!("{}: got {got}, expected {want}", ctx())
        })
    }
}

pub fn criterion_name(id: u32) -> &'static str {
    match id {
        1 => "dimension formula",
        2 => "projective components sum",
        3 => "hypersurface trace triangle",
        4 => "Hodge number goldens",
        5 => "coprime character criterion",
        6 => "sum-zero permutation character",
        7 => "Young's rule multiplicities",
        8 => "existence consistency",
        9 => "minimal alpha search",
        _ => "unknown",
    }
}

pub fn run_criterion(id: u32, cfg: &VerifyConfig) -> Result<CriterionResult> {
    if !CRITERIA.contains(&id) {
        return Err(Error::invalid(format!(
            "no criterion {id} (expected 1..=9)"
        )));
    }
    let mut t = Tally {
        checks: 0,
        notes: Vec::new(),
    };
    let engine = TraceEngine::new(cfg.window_slack);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(id as u64));
    let outcome = match id {
        1 => dimension_formula(&mut t),
        2 => projective_sum(&mut t, &engine, &mut rng),
        3 => trace_triangle(&mut t, &engine, &mut rng),
        4 => hodge_goldens(&mut t, &engine),
        5 => coprime_theorem(&mut t),
        6 => prop_m(&mut t, cfg.enumeration_cap),
        7 => young_rule(&mut t, cfg.enumeration_cap),
        8 => existence(&mut t, cfg.enumeration_cap),
        _ => alpha_search(&mut t, cfg.alpha_cap),
    };
    Ok(CriterionResult {
        id,
        name: criterion_name(id),
        passed: outcome.is_ok(),
        checks: t.checks,
        failure: outcome.err().map(|e| e.to_string()),
        notes: t.notes,
    })
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<CriterionResult> {
    CRITERIA
        .map(|id| run_criterion(id, cfg).expect("criterion ids are in range"))
        .collect()
}

fn int(v: i64) -> Cyclotomic {
    Cyclotomic::from_int(v)
}

fn dimension_formula(t: &mut Tally) -> Result<()> {
    for n in 1..=4u32 {
        for d in 2..=6u32 {
            let dm1 = BigInt::from(d - 1);
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let want = Rational::new(
                pow(dm1.clone(), n as usize + 2) + dm1 * sign,
                BigInt::from(d),
            );
            let got = trace_primitive(&HypersurfaceAction::trivial(n, d)?);
            t.eq(&got, &Cyclotomic::from_rational(&want), || {
                format!("n={n} d={d}")
            })?;
        }
    }
    for (n, d, want) in [(2, 4, 21), (1, 3, 2), (3, 5, 204)] {
        let got = trace_primitive(&HypersurfaceAction::trivial(n, d)?);
        t.eq(&got, &int(want), || format!("golden n={n} d={d}"))?;
    }
    Ok(())
}

fn random_spectrum(rng: &mut ChaCha8Rng, min_dim: u32, max_dim: u32) -> Result<Spectrum> {
    let conductor = rng.gen_range(1..=12u64);
    let dim = rng.gen_range(min_dim..=max_dim);
    Spectrum::new(
        conductor,
        (0..dim).map(|_| (rng.gen_range(0..conductor) as i64, 1)),
    )
}

fn alternating(len: u32) -> YPoly {
    YPoly::from_ints(
        &(0..len)
            .map(|p| if p % 2 == 0 { 1 } else { -1 })
            .collect::<Vec<_>>(),
    )
}

fn projective_sum(t: &mut Tally, engine: &TraceEngine, rng: &mut ChaCha8Rng) -> Result<()> {
    for _ in 0..50 {
        let s = random_spectrum(rng, 2, 8)?;
        let got = engine.chi_y_components(&projective_components(&s))?;
        t.eq(&got, &alternating(s.dim()), || format!("spectrum {s}"))?;
    }
    Ok(())
}

/// Blocks of an invertible polynomial of degree `d`: a chain
/// `x_1^{d−1}x_2 + ⋯ + x_{k−1}^{d−1}x_k + x_k^d` (`k = 1` is a Fermat term)
/// or a loop `x_1^{d−1}x_2 + ⋯ + x_k^{d−1}x_1`. Sums of blocks are smooth.
#[derive(Clone, Copy, Debug)]
enum Block {
    Chain(usize),
    Loop(usize),
}

/// Exponent vectors mod `n` of the diagonal maps fixing one block.
fn block_symmetries(block: Block, d: u32, n: i64) -> Vec<Vec<i64>> {
    let len = match block {
        Block::Chain(k) | Block::Loop(k) => k,
    };
    let a = d as i64 - 1;
    (0..n)
        .filter_map(|k1| {
            let mut v = vec![k1];
            for i in 1..len {
                v.push((-a * v[i - 1]).rem_euclid(n));
            }
            let last = v[len - 1];
            let closes = match block {
                Block::Chain(_) => (d as i64 * last) % n == 0,
                Block::Loop(_) => (a * last + v[0]) % n == 0,
            };
            closes.then_some(v)
        })
        .collect()
}

/// A random automorphism of a smooth hypersurface with `3 ≤ dim V ≤ 6`,
/// `d ≤ 5` and conductor at most 12, with a short description of its origin.
pub fn random_smooth_action(rng: &mut ChaCha8Rng) -> Result<(HypersurfaceAction, String)> {
    loop {
        let dim = rng.gen_range(3..=6u32);
        let d = rng.gen_range(2..=5u32);
        let (spectrum, origin) = if rng.gen_bool(0.5) {
            // diagonal symmetry of an invertible polynomial
            let n = rng.gen_range(1..=12i64);
            let mut left = dim as usize;
            let mut blocks = Vec::new();
            while left > 0 {
                let k = if d == 2 { 1 } else { rng.gen_range(1..=left) };
                blocks.push(if k >= 2 && rng.gen_bool(0.5) {
                    Block::Loop(k)
                } else {
                    Block::Chain(k)
                });
                left -= k;
            }
            let mut exps = Vec::new();
            for &b in &blocks {
                let sols = block_symmetries(b, d, n);
                exps.extend(sols[rng.gen_range(0..sols.len())].iter().copied());
            }
            let s = Spectrum::new(n as u64, exps.into_iter().map(|k| (k, 1)))?;
            (s, format!("diagonal symmetry of {blocks:?}"))
        } else {
            // permutation of coordinates times d-th roots of unity on the Fermat hypersurface
            let mut left = dim;
            let mut cycles = Vec::new();
            while left > 0 {
                let p = rng.gen_range(1..=left);
                cycles.push((p, rng.gen_range(0..d)));
                left -= p;
            }
            // a p-cycle with scalar product ζ_d^j has eigenvalues exp(2πi(j + t d)/(p d))
            let n = cycles
                .iter()
                .fold(1u64, |acc, &(p, _)| crate::arith::lcm(acc, (p * d) as u64));
            let entries = cycles.iter().flat_map(|&(p, j)| {
                let scale = (n / (p * d) as u64) as i64;
                (0..p).map(move |t| ((j + t * d) as i64 * scale, 1))
            });
            let s = Spectrum::new(n, entries)?.normalized();
            (s, format!("Fermat, cycles with scalars {cycles:?}"))
        };
        if spectrum.conductor() <= 12 {
            return Ok((HypersurfaceAction::new(d, spectrum)?, origin));
        }
    }
}

fn trace_triangle(t: &mut Tally, engine: &TraceEngine, rng: &mut ChaCha8Rng) -> Result<()> {
    for _ in 0..50 {
        let (a, origin) = random_smooth_action(rng)?;
        let (d, s) = (a.degree(), a.spectrum());
        let closed = trace_primitive(&a);
        let series = engine.chi_y_primitive(&a)?.eval(&int(-1));
        let euler = euler_fixed_locus_trace(&a);
        t.eq(&series, &closed, || {
            format!("series route, d={d}, spectrum {s} ({origin})")
        })?;
        t.eq(&euler, &closed, || {
            format!("Lefschetz route, d={d}, spectrum {s} ({origin})")
        })?;
    }
    // the closed form and the fixed-locus count agree even off the smooth locus
    for _ in 0..50 {
        let s = random_spectrum(rng, 3, 6)?;
        let d = rng.gen_range(2..=5u32);
        let a = HypersurfaceAction::new(d, s.clone())?;
        t.eq(&euler_fixed_locus_trace(&a), &trace_primitive(&a), || {
            format!("Lefschetz route, d={d}, spectrum {s}")
        })?;
    }
    Ok(())
}

fn hodge_goldens(t: &mut Tally, engine: &TraceEngine) -> Result<()> {
    for (n, d, want) in [
        (2, 4, vec![1, 19, 1]),
        (1, 3, vec![1, 1]),
        (3, 5, vec![1, 101, 101, 1]),
    ] {
        let got = engine.primitive_hodge_numbers(n, d)?;
        let want: Vec<BigInt> = want.into_iter().map(BigInt::from).collect();
        t.check(got == want, || {
            format!("h^(p,q)_prim for n={n} d={d}: got {got:?}")
        })?;
    }
    for n in 1..=3u32 {
        for d in 2..=5u32 {
            let fixed = engine.chi_y_hypersurface(&HypersurfaceAction::trivial(n, d)?)?;
            let direct = engine.chi_y_complete_intersection(&[d], n + 1, &unit_laurent())?;
            t.eq(&fixed, &direct, || format!("chi_y n={n} d={d}"))?;
        }
    }
    Ok(())
}

fn coprime_theorem(t: &mut Tally) -> Result<()> {
    for n in 1..=7u32 {
        for l in 1..=6u64 {
            let coprime = gcd(n as u64, l) == 1;
            let tilde = theta_tilde(n, l)?;
            let verdict = is_character(&tilde);
            t.check(verdict.is_character == coprime, || {
                format!(
                    "theta_tilde({n},{l}): is_character={} but gcd={}",
                    verdict.is_character,
                    gcd(n as u64, l)
                )
            })?;
            let signed = is_character(&signed_theta_tilde(n, l)?);
            t.check(signed.is_character == coprime, || {
                format!("signed theta_tilde({n},{l})")
            })?;
            let full = theta(n, l)?;
            t.check(is_character(&full).is_character, || {
                format!("theta({n},{l}) is not a character")
            })?;
            if coprime {
                let big = decompose(&full)?;
                let small = decompose(&tilde)?;
                let scaled = big
                    .iter()
                    .all(|(k, v)| *v == &small[k] * Rational::from_integer(l.into()));
                t.check(scaled, || {
                    format!("decompose(theta) != l * decompose(theta_tilde) for ({n},{l})")
                })?;
            }
            let triv = trivial_multiplicity(n, l)?;
            t.eq(&triv, &binomial(n as u64 + l - 1, n as u64), || {
                format!("trivial multiplicity ({n},{l})")
            })?;
            let sign = sign_multiplicity(n, l)?;
            t.eq(&sign, &binomial(l, n as u64), || {
                format!("sign multiplicity ({n},{l})")
            })?;
        }
    }
    Ok(())
}

fn prop_m(t: &mut Tally, cap: u64) -> Result<()> {
    for spec in ["2", "3", "4", "2x2"] {
        let a = AbelianGroupSpec::parse(spec)?;
        for n in 1..=5u32 {
            let chi = chi_m(n, &a)?;
            for mu in partitions(n) {
                let count = count_fixed_points_m(&mu, &a, cap)?;
                t.eq(
                    chi.value(&mu),
                    &Cyclotomic::from_bigint(count.into()),
                    || format!("A={a}, cycle type {mu}"),
                )?;
            }
        }
    }
    Ok(())
}

fn young_rule(t: &mut Tally, cap: u64) -> Result<()> {
    for n in 1..=6u32 {
        for l in 1..=4u64 {
            for lambda in partitions(n) {
                // errors with InternalMismatch when the two routes disagree
                schur_multiplicity_theta(&lambda, l)?;
                t.checks += 1;
            }
            let orbits = count_orbits_by_shape(n, l, cap)?;
            for (mu, count) in orbits {
                t.eq(&c_mu(&mu, l), &count.into(), || {
                    format!("orbits of shape {mu}, n={n}, l={l}")
                })?;
            }
        }
    }
    Ok(())
}

fn existence(t: &mut Tally, cap: u64) -> Result<()> {
    for n in 1..=4u32 {
        for d in 2..=5u32 {
            let sum = &type_i_character(n + 1, d)? + &type_ii_character(n, d)?;
            let target = signed_theta_tilde(n + 3, d as u64 - 1)?;
            t.check(sum == target, || {
                format!(
                    "type_I({},{d}) + type_II({n},{d}) != sg*(d-1)^(m_1-1)",
                    n + 1
                )
            })?;
            let coprime = exists_smooth_symmetric(n, d);
            let verdict = is_character(&sum).is_character;
            t.check(verdict == coprime, || {
                format!(
                    "character verdict {verdict} vs gcd({}, {}) for n={n} d={d}",
                    n + 3,
                    d - 1
                )
            })?;
        }
    }
    for q in 2..=12u32 {
        for terms in 4..=9u32 {
            let (n, d) = (terms - 3, q + 1);
            let smooth = fermat_section_singular(n, d, cap)?.is_none();
            let predicate = exists_smooth_symmetric(n, d);
            if prime_power(q as u64).is_some() {
                t.check(smooth == predicate, || {
                    format!(
                        "Fermat oracle smooth={smooth} vs gcd predicate {predicate} at n={n} d={d}"
                    )
                })?;
            } else if smooth != predicate {
                t.notes.push(format!(
                    "n={n} d={d}: gcd({terms},{q})=1 but the Fermat section is singular"
                ));
            }
        }
    }
    Ok(())
}

fn alpha_search(t: &mut Tally, cap: u32) -> Result<()> {
    for n in 1..=8u32 {
        for l in 2..=8u64 {
            if gcd(n as u64, l) == 1 {
                continue;
            }
            find_min_alpha(n, l, cap)?;
            t.checks += 1;
        }
    }
    Ok(())
}
