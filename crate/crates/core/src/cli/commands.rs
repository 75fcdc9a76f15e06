use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::{Command, GroupChoice, OracleCommand, Outcome, RunConfig};
use crate::arith::numtheory::{gcd, prime_power};
use crate::arith::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::lefschetz::{trace_primitive, unit_laurent, HypersurfaceAction, Spectrum, TraceEngine};
use crate::oracles::{
    count_fixed_points_m, count_orbits_by_shape, euler_fixed_locus_trace, exists_smooth_symmetric,
    fermat_section_singular, OracleReport,
};
use crate::series::YPoly;
use crate::symgroup::{
    c_mu, chi_m, d_a, is_character, signed_theta_tilde, theta_tilde, type_i_character,
    type_ii_character, AbelianGroupSpec, CharacterVerdict, ClassFunction, Partition,
};
use crate::verify::{run_all, run_criterion, VerifyConfig};

pub(super) fn dispatch(cfg: &RunConfig, cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Trace {
            degree,
            spectrum,
            formal,
        } => trace(cfg, degree, &spectrum, formal),
        Command::ChiY {
            degree,
            spectrum,
            multidegree,
            ambient,
        } => chi_y(cfg, degree, spectrum, multidegree, ambient),
        Command::Hodge { n, d } => hodge(cfg, n, d),
        Command::PermCharacter { n, d, group } => perm_character(cfg, n, d, group),
        Command::IsCharacter { n, l, signed } => theta_character(cfg, n, l, signed),
        Command::Decompose { n, values, json } => decompose_cmd(cfg, n, values, json),
        Command::Existence { n, d } => existence(cfg, n, d),
        Command::Oracle { which } => oracle(cfg, which),
        Command::VerifyAll { criterion, seed } => verify_all(cfg, criterion, seed),
    }
}

fn cyclotomic_fields(c: &Cyclotomic) -> (Value, Value, Value) {
    let rational = c.to_rational().ok().map(|r| r.to_string());
    (
        json!(c.to_string()),
        serde_json::to_value(c).expect("cyclotomics serialize"),
        json!(rational),
    )
}

fn action(degree: u32, spectrum: &str) -> Result<HypersurfaceAction> {
    HypersurfaceAction::new(degree, Spectrum::parse(spectrum)?)
}

/// Adds context to the series route failing on a spectrum that no smooth
/// invariant hypersurface realizes.
fn series_hint(e: Error) -> Error {
    match e {
        Error::NotPolynomial(msg) => Error::NotPolynomial(format!(
            "{msg} (is the spectrum realized by a smooth invariant hypersurface of this degree?)"
        )),
        other => other,
    }
}

fn trace(cfg: &RunConfig, degree: u32, spectrum: &str, formal: bool) -> Result<Outcome> {
    let a = action(degree, spectrum)?;
    let value = trace_primitive(&a);
    let euler = euler_fixed_locus_trace(&a);
    let (display, exact, rational) = cyclotomic_fields(&value);
    let agree = euler == value;
    let mut report = json!({
        "degree": degree,
        "n": a.n(),
        "spectrum": a.spectrum().to_string(),
        "trace": display,
        "value": exact,
        "rational": rational,
        "euler_fixed_locus_trace": euler.to_string(),
        "agree": agree,
    });
    if formal {
        let engine = TraceEngine::new(cfg.window_slack);
        let chi = engine.chi_y_hypersurface(&a).map_err(series_hint)?;
        let prim = engine.chi_y_primitive(&a).map_err(series_hint)?;
        let at = prim.eval(&Cyclotomic::from_int(-1));
        report["chi_y"] = json!(chi.to_string());
        report["chi_y_prim"] = json!(prim.to_string());
        report["chi_y_prim_at_minus_one"] = json!(at.to_string());
        report["agree"] = json!(agree && at == value);
    }
    let ok = report["agree"] == json!(true);
    Ok(Outcome { report, ok })
}

fn parse_degrees(s: &str) -> Result<Vec<u32>> {
    let mut offset = 0;
    s.split(',')
        .map(|item| {
            let at = offset;
            offset += item.len() + 1;
            item.trim()
                .parse::<u32>()
                .ok()
                .filter(|&d| d >= 1)
                .ok_or_else(|| Error::parse(at, format!("bad degree {:?}", item.trim())))
        })
        .collect()
}

fn poly_report(p: &YPoly) -> Value {
    let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
    json!({"polynomial": p.to_string(), "coefficients": coeffs})
}

fn chi_y(
    cfg: &RunConfig,
    degree: Option<u32>,
    spectrum: Option<String>,
    multidegree: Option<String>,
    ambient: Option<u32>,
) -> Result<Outcome> {
    let engine = TraceEngine::new(cfg.window_slack);
    if let Some(md) = multidegree {
        let dd = parse_degrees(&md)?;
        let m = ambient.ok_or_else(|| Error::invalid("--multidegree needs -m"))?;
        let p = engine.chi_y_complete_intersection(&dd, m, &unit_laurent())?;
        let mut r = poly_report(&p);
        r["multidegree"] = json!(dd);
        r["ambient_dim"] = json!(m);
        return Ok(Outcome::ok(r));
    }
    let (Some(d), Some(s)) = (degree, spectrum) else {
        return Err(Error::invalid(
            "chi-y needs -d and -s, or --multidegree and -m",
        ));
    };
    let a = action(d, &s)?;
    let chi = engine.chi_y_hypersurface(&a).map_err(series_hint)?;
    let prim = if a.n() >= 1 {
        Some(engine.chi_y_primitive(&a).map_err(series_hint)?)
    } else {
        None
    };
    let mut r = poly_report(&chi);
    r["degree"] = json!(d);
    r["spectrum"] = json!(a.spectrum().to_string());
    r["primitive"] = json!(prim.map(|p| p.to_string()));
    Ok(Outcome::ok(r))
}

fn hodge(cfg: &RunConfig, n: u32, d: u32) -> Result<Outcome> {
    let h = TraceEngine::new(cfg.window_slack).primitive_hodge_numbers(n, d)?;
    let total: BigInt = h.iter().sum();
    let h: Vec<String> = h.iter().map(|v| v.to_string()).collect();
    Ok(Outcome::ok(json!({
        "n": n,
        "d": d,
        "primitive_hodge_numbers": h,
        "primitive_dimension": total.to_string(),
    })))
}

/// Number of partitions of `n`, for sizing the character table up front.
fn partition_count(n: u32) -> u64 {
    let n = n as usize;
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for k in part..=n {
            p[k] = p[k].saturating_add(p[k - part]);
        }
    }
    p[n]
}

/// The decomposition work grows like (number of classes)^2.
fn check_table_size(cfg: &RunConfig, n: u32) -> Result<()> {
    let k = partition_count(n);
    let needed = k.saturating_mul(k);
    if needed > cfg.enumeration_cap {
        return Err(Error::CapExceeded {
            cap: cfg.enumeration_cap,
            needed,
        });
    }
    Ok(())
}

fn values_json(f: &ClassFunction) -> Value {
    let m: serde_json::Map<String, Value> = f
        .values()
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v.to_string())))
        .collect();
    Value::Object(m)
}

fn verdict_fields(report: &mut Value, v: &CharacterVerdict) {
    let nonzero: serde_json::Map<String, Value> = v
        .multiplicities
        .iter()
        .filter(|(_, m)| **m != Rational::from_integer(0.into()))
        .map(|(k, m)| (k.to_string(), json!(m.to_string())))
        .collect();
    report["decomposition"] = Value::Object(nonzero);
    report["is_character"] = json!(v.is_character);
    report["witness"] = json!(v.witness.as_ref().map(|w| w.to_string()));
    let wm = v.witness.as_ref().map(|w| match v.multiplicities.get(w) {
        Some(r) => r.to_string(),
        None => v.non_rational[w].to_string(),
    });
    report["witness_multiplicity"] = json!(wm);
}

fn perm_character(cfg: &RunConfig, n: u32, d: u32, group: GroupChoice) -> Result<Outcome> {
    let (f, size, name) = match group {
        GroupChoice::Small => (n + 2, n + 2, "small"),
        GroupChoice::Big => (n + 3, n + 3, "big"),
    };
    check_table_size(cfg, f)?;
    let chi = match group {
        GroupChoice::Small => type_i_character(n, d)?,
        GroupChoice::Big => type_ii_character(n, d)?,
    };
    let mut r = json!({
        "n": n,
        "d": d,
        "group": name,
        "symmetric_group": format!("S_{size}"),
        "values": values_json(&chi),
    });
    verdict_fields(&mut r, &is_character(&chi));
    Ok(Outcome::ok(r))
}

fn theta_character(cfg: &RunConfig, n: u32, l: u64, signed: bool) -> Result<Outcome> {
    check_table_size(cfg, n)?;
    let f = if signed {
        signed_theta_tilde(n, l)?
    } else {
        theta_tilde(n, l)?
    };
    let mut r = json!({
        "n": n,
        "l": l,
        "function": if signed { "signed_theta_tilde" } else { "theta_tilde" },
        "gcd": gcd(n as u64, l),
        "values": values_json(&f),
    });
    verdict_fields(&mut r, &is_character(&f));
    Ok(Outcome::ok(r))
}

/// Parses `"[3]: 1; [2,1]: 0; [1,1,1]: 3"`.
fn parse_values(n: u32, src: &str) -> Result<ClassFunction> {
    let mut values = BTreeMap::new();
    let mut offset = 0;
    for item in src.split(';') {
        let at = offset;
        offset += item.len() + 1;
        if item.trim().is_empty() {
            continue;
        }
        let (k, v) = item
            .split_once(':')
            .ok_or_else(|| Error::parse(at, "expected '[partition]: value'"))?;
        let p = Partition::parse(k).map_err(|e| shift(e, at))?;
        let c = Cyclotomic::parse(v).map_err(|e| shift(e, at + k.len() + 1))?;
        values.insert(p, c);
    }
    ClassFunction::new(n, values)
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { position, message } => Error::Parse {
            position: position + by,
            message,
        },
        other => other,
    }
}

fn decompose_cmd(
    cfg: &RunConfig,
    n: Option<u32>,
    values: Option<String>,
    json_src: Option<String>,
) -> Result<Outcome> {
    let f = match (values, json_src) {
        (Some(v), None) => {
            let n = n.ok_or_else(|| Error::invalid("--values needs -n"))?;
            check_table_size(cfg, n)?;
            parse_values(n, &v)?
        }
        (None, Some(j)) => serde_json::from_str::<ClassFunction>(&j).map_err(|e| Error::Parse {
            position: e.column().saturating_sub(1),
            message: e.to_string(),
        })?,
        _ => return Err(Error::invalid("give exactly one of --values or --json")),
    };
    check_table_size(cfg, f.n())?;
    let mut r = json!({"n": f.n(), "values": values_json(&f)});
    verdict_fields(&mut r, &is_character(&f));
    Ok(Outcome::ok(r))
}

fn existence(cfg: &RunConfig, n: u32, d: u32) -> Result<Outcome> {
    if n < 1 || d < 2 {
        return Err(Error::invalid("need n >= 1 and d >= 2"));
    }
    let predicate = exists_smooth_symmetric(n, d);
    let cert = fermat_section_singular(n, d, cfg.enumeration_cap)?;
    let smooth = cert.is_none();
    Ok(Outcome::ok(json!({
        "n": n,
        "d": d,
        "gcd": gcd(n as u64 + 3, d as u64 - 1),
        "gcd_verdict": predicate,
        "fermat_smooth": smooth,
        "certificate": cert.map(|c| json!({"order": c.order(), "exponents": c.exponents()})),
        "discrepancy": predicate != smooth,
    })))
}

fn oracle(cfg: &RunConfig, which: OracleCommand) -> Result<Outcome> {
    let (report, ok) = match which {
        OracleCommand::FixedPoints { mu, group } => {
            let mu = Partition::parse(&mu)?;
            let a = AbelianGroupSpec::parse(&group)?;
            let count = count_fixed_points_m(&mu, &a, cfg.enumeration_cap)?;
            let formula = chi_m(mu.n(), &a)?.value(&mu).clone();
            let agree = formula == Cyclotomic::from_int(count as i64);
            let r = OracleReport {
                claim: format!(
                    "fixed points of cycle type {mu} on M in ({a})^{} equal d_A * l^(m_1-1) (d_A = {})",
                    mu.n(),
                    d_a(&mu, &a)
                ),
                formula_value: json!(formula.to_string()),
                oracle_value: json!(count.to_string()),
                agree,
                certificate: None,
            };
            (r, agree)
        }
        OracleCommand::Orbits { n, l } => {
            let orbits = count_orbits_by_shape(n, l, cfg.enumeration_cap)?;
            let mut formula = serde_json::Map::new();
            let mut oracle = serde_json::Map::new();
            let mut agree = true;
            for (mu, count) in &orbits {
                let c = c_mu(mu, l);
                agree &= c == (*count).into();
                formula.insert(mu.to_string(), json!(c.to_string()));
                oracle.insert(mu.to_string(), json!(count.to_string()));
            }
            let r = OracleReport {
                claim: format!("S_{n}-orbits on (Z/{l})^{n} of each shape number c_mu({l})"),
                formula_value: Value::Object(formula),
                oracle_value: Value::Object(oracle),
                agree,
                certificate: None,
            };
            (r, agree)
        }
        OracleCommand::Euler { degree, spectrum } => {
            let a = action(degree, &spectrum)?;
            let closed = trace_primitive(&a);
            let euler = euler_fixed_locus_trace(&a);
            let agree = closed == euler;
            let r = OracleReport {
                claim: format!(
                    "closed trace formula equals the fixed-locus Euler count for d={degree}, spectrum {}",
                    a.spectrum()
                ),
                formula_value: json!(closed.to_string()),
                oracle_value: json!(euler.to_string()),
                agree,
                certificate: None,
            };
            (r, agree)
        }
        OracleCommand::Fermat { n, d } => {
            if n < 1 || d < 2 {
                return Err(Error::invalid("need n >= 1 and d >= 2"));
            }
            let predicate = exists_smooth_symmetric(n, d);
            let cert = fermat_section_singular(n, d, cfg.enumeration_cap)?;
            let smooth = cert.is_none();
            let agree = predicate == smooth;
            // composite d-1 is where the Fermat section is known to fail as a witness
            let expected = prime_power(d as u64 - 1).is_none() && d > 2;
            let r = OracleReport {
                claim: format!(
                    "Fermat section of degree {d} in P^{} is smooth iff gcd({}, {}) = 1",
                    n + 1,
                    n + 3,
                    d - 1
                ),
                formula_value: json!(predicate),
                oracle_value: json!(smooth),
                agree,
                certificate: cert.map(|c| json!({"order": c.order(), "exponents": c.exponents()})),
            };
            let mut v = serde_json::to_value(r).expect("reports serialize");
            if !agree && expected {
                v["note"] = json!(format!(
                    "d-1 = {} is not a prime power; the Fermat section need not witness existence here",
                    d - 1
                ));
            }
            return Ok(Outcome {
                report: v,
                ok: agree || expected,
            });
        }
    };
    Ok(Outcome {
        report: serde_json::to_value(report).expect("reports serialize"),
        ok,
    })
}

fn verify_all(cfg: &RunConfig, criterion: Option<u32>, seed: u64) -> Result<Outcome> {
    let vcfg = VerifyConfig {
        window_slack: cfg.window_slack,
        enumeration_cap: cfg.enumeration_cap,
        alpha_cap: cfg.alpha_search_cap,
        seed,
    };
    let results = match criterion {
        Some(id) => vec![run_criterion(id, &vcfg)?],
        None => run_all(&vcfg),
    };
    let passed = results.iter().all(|r| r.passed);
    let lines: Vec<String> = results.iter().map(|r| r.to_string()).collect();
    Ok(Outcome {
        report: json!({
            "passed": passed,
            "seed": seed,
            "summary": lines.join("\n") + "\n",
            "results": results,
        }),
        ok: passed,
    })
}
