use std::process::Command;

use charclass_cli::parse::{parse_class, parse_ring};
use charclass_cli::{expression_from_terms, run};
use serde_json::Value;

fn json(args: &[&str]) -> Value {
    let mut argv = vec!["charclass", "--json"];
    argv.extend_from_slice(args);
    let out = run(argv);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("valid json")
}

#[test]
fn json_polynomials_round_trip() {
    let cases: [(&[&str], &str); 4] = [
        (&["schur", "--ell", "2", "--r", "3", "--ring", "pontryagin", "--class", "1 + p1 + p2 + p3"], "pontryagin"),
        (&["schur", "--ell", "3", "--r", "2"], "formal:4"),
        (&["sq1", "--ring", "rp:9", "--input", "a^3 + a^5 + a"], "rp:9"),
        (&["torsion", "--ell", "4", "--r", "4"], "twisted"),
    ];
    for (args, ring) in cases {
        let v = json(args);
        let terms = v["result"]["terms"].as_array().unwrap();
        let spec = parse_ring(ring, None).unwrap();
        let reparsed = parse_class(&expression_from_terms(terms), &spec.ring, spec.field).unwrap();
        let text = run(std::iter::once("charclass").chain(args.iter().copied()));
        assert!(text.stdout.trim_end().ends_with(&format!("= {reparsed}")), "{} vs {reparsed}", text.stdout);
    }
}

#[test]
fn pushforward_defaults_to_a_formal_base() {
    let v = json(&["pushforward", "--rank", "2", "--wE", "1 + w1 + w2", "--input", "a^3"]);
    assert_eq!(v["inputs"]["base"], "formal:2");
    let terms = v["result"]["terms"].as_array().unwrap();
    let monomials: Vec<&str> = terms.iter().map(|t| t["monomial"].as_str().unwrap()).collect();
    assert_eq!(monomials, ["w1^2", "w2"]);
}

#[test]
fn obstruction_verdicts() {
    let v = json(&["obstruct-rp", "--n", "4", "--sections", "6", "--ell", "3"]);
    assert_eq!(v["verdict"], "obstructed");
    assert_eq!(v["result"]["terms"][0]["monomial"], "a^3");
    let v = json(&["obstruct-rp", "--n", "3", "--sections", "1"]);
    assert_eq!(v["verdict"], "inconclusive");
    assert_eq!(v["result"]["report"].as_array().unwrap().len(), 1);
}

#[test]
fn degree_reports() {
    let v = json(&["degree", "--map", "power:2", "--dim", "1"]);
    assert_eq!(v["result"]["rounded"], 2);
    let v = json(&["degree", "--map", "reflect-y", "--dim", "2", "--resolution", "64"]);
    assert_eq!(v["result"]["rounded"], -1);
    assert_eq!(v["verdict"], "reliable");
}

#[test]
fn input_errors_exit_two() {
    for argv in [
        vec!["charclass"],
        vec!["charclass", "nonsense"],
        vec!["charclass", "schur", "--ell", "2"],
        vec!["charclass", "qclass", "--ell", "3", "--r", "4"],
        vec!["charclass", "sq1", "--ring", "pontryagin", "--input", "p1"],
        vec!["charclass", "sq1", "--ring", "formal:3", "--input", "w1 + w9"],
        vec!["charclass", "degree", "--map", "spiral", "--dim", "1"],
        vec!["charclass", "obstruct-rp", "--n", "0", "--sections", "1"],
        vec!["charclass", "verify615", "--max-ell", "9", "--max-r", "3"],
    ] {
        let out = run(argv.clone());
        assert_eq!(out.code, 2, "{argv:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(run(["charclass", "--help"]).code, 0);
}

#[test]
fn verify_report_shape() {
    let v = json(&["verify615", "--max-ell", "2", "--max-r", "4"]);
    assert_eq!(v["verdict"], "pass");
    let rows = v["result"]["report"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r["mod2"] == true && r["real"] == true));
}

#[test]
fn binary_matches_library() {
    let args = ["qclass", "--ell", "3", "--r", "3"];
    let out = Command::new(env!("CARGO_BIN_EXE_charclass")).args(args).output().unwrap();
    assert!(out.status.success());
    let lib = run(std::iter::once("charclass").chain(args));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), lib.stdout);

    let out = Command::new(env!("CARGO_BIN_EXE_charclass")).args(["schur", "--ell", "x"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
