use abel_lab_web::{center_table, factor_structure, trig_explorer};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn table_of_simple_pair() {
    let v = parse(center_table("-1,0,1", "0,-1,0,1", "-1", "1", 8, "eps").unwrap());
    assert_eq!(v["entries"]["4,1"], "-8/15");
    assert_eq!(v["order"], 1);
    assert!(v["cc"].is_null());
}

#[test]
fn table_of_composite_pair() {
    let v = parse(center_table("1,0,-2,0,1", "0,0,-1,0,1", "-1", "1", 10, "delta").unwrap());
    assert_eq!(v["entries"], serde_json::json!({}));
    assert!(v["order"].is_null());
    assert_eq!(v["cc"]["w"], "x^2");
}

#[test]
fn table_rejects_bad_input() {
    assert!(center_table("1,0,1", "0", "-1", "1", 8, "eps").unwrap_err().starts_with("P"));
    assert!(center_table("-1,0,1", "0", "-1", "1", 99, "eps").unwrap_err().starts_with("kmax"));
    assert!(center_table("-1,0,1", "0", "-1", "1", 8, "zeta").unwrap_err().starts_with("param"));
    assert!(center_table("-1,0,1*r2", "0", "-1*r3", "1", 8, "eps").is_err());
}

#[test]
fn shifted_chebyshev_structure() {
    let v = parse(factor_structure("0,0,18,0,-48,0,32", "-1/2*r3", "1/2*r3").unwrap());
    assert_eq!(v["s"], 2);
    assert_eq!(v["degrees"], serde_json::json!([2, 3]));
    assert_eq!(v["pattern"], "chebyshev-like");
    assert_eq!(v["definite"], false);
}

#[test]
fn trig_locus() {
    let v = parse(trig_explorer("1", "0", "0").unwrap());
    assert_eq!(v["value_3_2"], "3/4");
    assert_eq!(v["families_vanish"], true);
    assert_eq!(v["certificate"]["i"], 3);
    let v = parse(trig_explorer("1*r3", "1", "5").unwrap());
    assert_eq!(v["value_3_2"], "0");
    assert!(trig_explorer("1*r3", "1*r2", "0").is_err());
}
