use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equitrace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--output", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad json ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    });
    (v, out.status.code().unwrap())
}

#[test]
fn trace_quartic_involution() {
    let (v, code) = json(&["trace", "-d", "4", "-s", "2: 0^3, 1^1"]);
    assert_eq!(code, 0);
    assert_eq!(v["trace"], "-7");
    assert_eq!(v["rational"], "-7");
    assert_eq!(v["agree"], true);
}

#[test]
fn trace_identity_is_primitive_dimension() {
    let (v, _) = json(&["trace", "-d", "4", "-s", "1: 0^4"]);
    assert_eq!(v["trace"], "21");
}

#[test]
fn trace_formal_cubic_curve() {
    let (v, code) = json(&["trace", "-d", "3", "-s", "1: 0^3", "--formal"]);
    assert_eq!(code, 0);
    assert_eq!(v["chi_y_prim"], "1 - y");
    assert_eq!(v["chi_y"], "0");
}

#[test]
fn trace_irrational_value_is_exact() {
    let (v, code) = json(&["trace", "-d", "4", "-s", "7: 1, 2, 4, 0"]);
    assert_eq!(code, 0);
    assert_eq!(v["agree"], true);
    assert!(v["value"]["conductor"].is_u64());
}

#[test]
fn text_output_is_key_value_lines() {
    let out = run(&["trace", "-d", "4", "-s", "2: 0^3, 1^1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "trace: -7"));
    assert!(text.lines().any(|l| l == "agree: true"));
}

#[test]
fn hodge_k3() {
    let (v, _) = json(&["hodge", "-n", "2", "-d", "4"]);
    assert_eq!(
        v["primitive_hodge_numbers"],
        serde_json::json!(["1", "19", "1"])
    );
}

#[test]
fn chi_y_complete_intersection() {
    let (v, code) = json(&["chi-y", "--multidegree", "2,3", "-m", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["polynomial"], "2 - 20*y + 2*y^2");
}

#[test]
fn perm_character_small_cubic_curve() {
    let (v, code) = json(&["perm-character", "-n", "1", "-d", "3", "--group", "small"]);
    assert_eq!(code, 0);
    assert_eq!(v["values"]["[3]"], "2");
    assert_eq!(v["values"]["[2,1]"], "-2");
    assert_eq!(v["values"]["[1,1,1]"], "2");
    assert_eq!(v["decomposition"], serde_json::json!({"[1,1,1]": "2"}));
    assert_eq!(v["is_character"], true);
}

#[test]
fn perm_character_big_plane_quartic() {
    let (v, code) = json(&["perm-character", "-n", "1", "-d", "4", "--group", "big"]);
    assert_eq!(code, 0);
    assert_eq!(v["values"]["[1,1,1,1]"], "6");
    assert_eq!(v["decomposition"], serde_json::json!({"[2,1,1]": "2"}));
    assert_eq!(v["is_character"], true);
}

#[test]
fn perm_character_big_cubic_is_not_a_character() {
    let (v, _) = json(&["perm-character", "-n", "1", "-d", "3", "--group", "big"]);
    assert_eq!(v["is_character"], false);
    assert_eq!(v["witness"], "[2,2]");
    assert_eq!(v["witness_multiplicity"], "-1/2");
}

#[test]
fn theta_not_a_character() {
    let (v, code) = json(&["is-character", "-n", "2", "-l", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["is_character"], false);
    assert_eq!(v["witness"], "[2]");
    assert_eq!(v["witness_multiplicity"], "3/2");
}

#[test]
fn theta_coprime_is_a_character() {
    let (v, _) = json(&["is-character", "-n", "5", "-l", "3"]);
    assert_eq!(v["is_character"], true);
    assert_eq!(v["witness"], Value::Null);
}

#[test]
fn decompose_values_string_and_json_agree() {
    let (a, _) = json(&["decompose", "-n", "2", "--values", "[2]: 1; [1,1]: 3"]);
    let (b, _) = json(&[
        "decompose",
        "--json",
        r#"{"n":2,"values":{"[2]":"1","[1,1]":"3"}}"#,
    ]);
    assert_eq!(a["decomposition"], b["decomposition"]);
    assert_eq!(
        a["decomposition"],
        serde_json::json!({"[2]": "2", "[1,1]": "1"})
    );
}

#[test]
fn existence_discrepancy_prints_certificate() {
    let (v, code) = json(&["existence", "-n", "2", "-d", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["gcd_verdict"], true);
    assert_eq!(v["fermat_smooth"], false);
    assert_eq!(v["certificate"]["order"], 6);
}

#[test]
fn oracles_agree() {
    for args in [
        &["oracle", "fixed-points", "--mu", "[2,1,1]", "-a", "4"][..],
        &["oracle", "orbits", "-n", "4", "-l", "3"],
        &["oracle", "euler", "-d", "3", "-s", "9: 1, 7, 4"],
        &["oracle", "fermat", "-n", "2", "-d", "4"],
    ] {
        let (v, code) = json(args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(v["agree"], true, "{args:?}");
    }
}

#[test]
fn verify_single_criterion() {
    let (v, code) = json(&["verify-all", "--criterion", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert_eq!(v["results"].as_array().unwrap().len(), 1);
}

#[test]
fn parse_error_is_json_on_stderr() {
    let out = run(&["trace", "-d", "3", "-s", "3: 1, x"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "parse");
    assert!(err["position"].is_u64());
}

#[test]
fn cap_is_enforced() {
    let out = run(&["--cap", "10", "is-character", "-n", "6", "-l", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "cap_exceeded");
}

#[test]
fn usage_error_exits_two() {
    assert_eq!(run(&["trace"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}
