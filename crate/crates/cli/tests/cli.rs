use std::path::PathBuf;
use std::process::{Command, Output};

use abel_lab::{Poly, Scalar};
use serde_json::Value;

fn fixture(name: &str, body: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&str], input: Option<&PathBuf>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_abel-lab"));
    cmd.args(args);
    if let Some(p) = input {
        cmd.arg("--input").arg(p);
    }
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const SIMPLE: &str = r#"{"P":{"coeffs":["-1","0","1"]},"Q":{"coeffs":["0","-1","0","1"]},"interval":{"a":"-1","b":"1"}}"#;
const COMPOSITE: &str = r#"{"P":{"coeffs":["1","0","-2","0","1"]},"Q":{"coeffs":["0","0","-1","0","1"]},"interval":{"a":"-1","b":"1"}}"#;
const T6: &str = r#"{"D":3,"P":{"coeffs":["0","0","18","0","-48","0","32"]},"interval":{"a":"-1/2*r3","b":"1/2*r3"}}"#;

#[test]
fn cc_reports_square_witness() {
    let input = fixture("cc.json", COMPOSITE);
    let out = run(&["cc", "--json"], Some(&input), &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["cc"]["w"]["coeffs"], serde_json::json!(["0", "0", "1"]));
    let text = run(&["cc"], Some(&input), &[]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("W = x^2"));
}

#[test]
fn center_table_first_entry() {
    let input = fixture("table.json", SIMPLE);
    let out = run(&["center-table", "--kmax", "8", "--param", "eps", "--json"], Some(&input), &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["4,1"], "-8/15");
}

#[test]
fn table_keys_follow_numeric_order() {
    let input = fixture("order.json", SIMPLE);
    let out = run(&["center-table", "--kmax", "11", "--json"], Some(&input), &[]);
    let keys: Vec<(usize, usize)> = json_of(&out)
        .as_object()
        .unwrap()
        .keys()
        .map(|k| {
            let (a, b) = k.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(keys.iter().any(|&(k, _)| k >= 10));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let input = fixture("det.json", T6);
    let one = run(&["zspace", "--degree", "9", "--json"], Some(&input), &[("ABEL_LAB_THREADS", "1")]);
    let many = run(&["zspace", "--degree", "9", "--json"], Some(&input), &[("ABEL_LAB_THREADS", "4")]);
    let auto = run(&["zspace", "--degree", "9", "--json"], Some(&input), &[("ABEL_LAB_THREADS", "0")]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(one.stdout, auto.stdout);
}

#[test]
fn emitted_polynomials_reparse() {
    let input = fixture("rt.json", T6);
    let v = json_of(&run(&["zspace", "--degree", "8", "--json"], Some(&input), &[]));
    let basis = v["basis"].as_array().unwrap();
    assert_eq!(basis.len(), v["dimension"].as_u64().unwrap() as usize);
    for b in basis {
        let p: Poly = serde_json::from_value(b.clone()).unwrap();
        assert_eq!(serde_json::to_value(&p).unwrap(), *b);
        for c in b["coeffs"].as_array().unwrap() {
            let text = c.as_str().unwrap();
            assert_eq!(text.parse::<Scalar>().unwrap().to_string(), text);
        }
    }
}

#[test]
fn factors_of_shifted_chebyshev() {
    let input = fixture("fac.json", T6);
    let v = json_of(&run(&["factors", "--json"], Some(&input), &[]));
    assert_eq!(v["s"], 2);
    assert_eq!(v["factor_degrees"], serde_json::json!([2, 3]));
    assert_eq!(v["tag"], "chebyshev-like");
}

#[test]
fn trig_certificate() {
    let input = fixture("trig.json", r#"{"P":{"cos":{"3":"1"}},"Q":{"sin":{"2":"1"}},"i":3,"j":2}"#);
    let v = json_of(&run(&["trig-moment", "--json"], Some(&input), &[]));
    assert_eq!(v["pi_coeff"], "3/4");
}

#[test]
fn verify_trig_suite() {
    let out = run(&["verify", "--suite", "trig", "--seed", "7"], None, &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS A8"));
    assert!(text.contains("PASS A9"));
    assert!(!text.contains("A1 "));
}

#[test]
fn malformed_inputs_exit_two_naming_the_field() {
    let cases = [
        (r#"{"P":{"coeffs":["1/0"]},"Q":{"coeffs":["0"]},"interval":{"a":"0","b":"1"}}"#, "`P`"),
        (r#"{"P":{"coeffs":["-1","0","1"]},"interval":{"a":"-1","b":"1"}}"#, "`Q`"),
        (r#"{"P":{"coeffs":["-1","0","1"]},"Q":{"coeffs":["0"]},"interval":{"a":"1","b":"1"}}"#, "`interval`"),
        (r#"{"P":{"coeffs":["1","0","1"]},"Q":{"coeffs":["0"]},"interval":{"a":"-1","b":"1"}}"#, "`P`"),
        (r#"{"D":4,"P":{"coeffs":["-1","0","1"]},"Q":{"coeffs":["0"]},"interval":{"a":"-1","b":"1"}}"#, "`D`"),
        (r#"{"D":2,"P":{"coeffs":["-1","0","1*r3"]},"Q":{"coeffs":["0"]},"interval":{"a":"-1","b":"1"}}"#, "`P`"),
    ];
    for (n, (body, field)) in cases.iter().enumerate() {
        let input = fixture(&format!("bad{n}.json"), body);
        let out = run(&["moments"], Some(&input), &[]);
        assert_eq!(out.status.code(), Some(2), "case {n}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(field), "case {n}: {err}");
    }
    let out = run(&["zspace"], Some(&fixture("nodeg.json", T6)), &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--degree"));
    let out = run(&["cc"], Some(&fixture("threads.json", COMPOSITE)), &[("ABEL_LAB_THREADS", "many")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ABEL_LAB_THREADS"));
}

#[test]
fn unclosed_q_is_rejected() {
    let body = r#"{"P":{"coeffs":["-1","0","1"]},"Q":{"coeffs":["0","1"]},"interval":{"a":"-1","b":"1"}}"#;
    let out = run(&["cc"], Some(&fixture("open.json", body)), &[]);
    assert_eq!(out.status.code(), Some(2));
}
