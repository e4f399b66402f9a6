use std::process::{Command, Output};

use gt_core::{GtPattern, SqrtRational};

fn gtcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gtcalc")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = gtcalc(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).expect("valid JSON")
}

#[test]
fn invariant_count() {
    assert_eq!(stdout(&["invariants", "count", "--n", "3"]), "7\n");
    assert_eq!(stdout(&["invariants", "count", "--n", "4"]), "12\n");
}

#[test]
fn pattern_conjugate() {
    assert_eq!(stdout(&["pattern", "conjugate", "1,0,0;1,0;1"]), "1,1,0;1,0;0\n");
}

#[test]
fn trivial_three_j() {
    assert_eq!(stdout(&["su2", "threej", "--j", "0", "0", "0", "--m", "0", "0", "0"]), "+1\n");
}

#[test]
fn negative_projections_parse() {
    let v = stdout(&["su2", "threej", "--j", "1/2", "1/2", "1", "--m", "1/2", "-1/2", "0"]);
    assert_eq!(v, "+(1/6)*sqrt(6)\n");
}

#[test]
fn validate_exit_codes() {
    assert_eq!(stdout(&["pattern", "validate", "2,1,0;2,1;1", "--mode", "sun"]), "valid\n");
    let bad = gtcalc(&["pattern", "validate", "1,0,0;2,0;1"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stdout).contains("violation"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(gtcalc(&["pattern", "conjugate"]).status.code(), Some(2));
    assert_eq!(gtcalc(&["su2", "threej", "--j", "x", "0", "0", "--m", "0", "0", "0"]).status.code(), Some(2));
    assert_eq!(gtcalc(&["bogus"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one() {
    let out = gtcalc(&["su2", "threej", "--j", "1/2", "0", "0", "--m", "1", "0", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    let out = gtcalc(&[
        "su3", "isoscalar", "--rep1", "0", "1", "--rep2", "1", "0", "--rep3", "1", "1", "--state", "0", "0",
        "--state", "0", "0", "--state", "0", "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn json_value_round_trips() {
    let v = json(&["su2", "threej", "--j", "1", "1", "0", "--m", "1", "-1", "0", "--format", "json"]);
    let value = &v["value"];
    let exact: SqrtRational = value["exact"].as_str().unwrap().parse().unwrap();
    let fields: SqrtRational = serde_json::from_value(value.clone()).unwrap();
    assert_eq!(exact, fields);
    assert_eq!(exact.to_compact_string(), "+(1/3)*sqrt(3)");
    assert_eq!(value["decimal"], "5.77350269189626e-1");
    assert_eq!(v["query"]["m"][1], "-1");
}

#[test]
fn enumerated_patterns_round_trip() {
    let text = stdout(&["pattern", "enumerate", "2,1,0"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 8);
    assert_eq!(stdout(&["pattern", "dim", "2,1,0"]), "8\n");
    let arr = json(&["pattern", "enumerate", "2,1,0", "--format", "json"]);
    let parsed: Vec<GtPattern> = serde_json::from_value(arr).unwrap();
    for (p, line) in parsed.iter().zip(&lines) {
        assert_eq!(&p.to_string(), line);
    }
}

#[test]
fn binary_words() {
    assert_eq!(stdout(&["bfr", "list", "--n", "3", "--m", "2"]), "110\n101\n011\n");
    assert_eq!(stdout(&["bfr", "complement", "101"]), "010\n");
}

#[test]
fn invariant_words() {
    let v = json(&["invariants", "list", "--n", "3", "--format", "json"]);
    let words: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["word"].as_str().unwrap()).collect();
    assert_eq!(words.len(), 7);
    assert!(words.contains(&"11|10|00"));
}

#[test]
fn ktable_lists_each_coupling() {
    let v = json(&["invariants", "ktable", "--rep1", "1", "0", "--rep2", "1", "1", "--format", "json"]);
    let reps: Vec<_> = v.as_array().unwrap().iter().map(|r| r["rep3"].clone()).collect();
    assert_eq!(reps.len(), 3);
    for r in v.as_array().unwrap() {
        let k: Vec<u64> = serde_json::from_value(r["k"].clone()).unwrap();
        assert_eq!(k.iter().sum::<u64>(), r["total"].as_u64().unwrap());
    }
}

#[test]
fn single_isoscalar_matches_table() {
    let one = stdout(&[
        "su3", "isoscalar", "--rep1", "1", "0", "--rep2", "1", "0", "--rep3", "0", "1", "--state", "1/2", "1",
        "--state", "0", "-2", "--state", "1/2", "-1",
    ]);
    assert_eq!(one, "+(1/2)*sqrt(2)\n");
    let table = stdout(&["su3", "table", "--rep1", "1", "0", "--rep2", "1", "0", "--rep3", "0", "1", "--format", "csv"]);
    assert!(table.lines().any(|l| l == "\"(0,1)\",1/2,1,0,-2,1/2,-1,+(1/2)*sqrt(2),7.07106781186548e-1"));
}

#[test]
fn wigner_table_is_unitary_per_column() {
    let v = json(&["su3", "table", "--rep1", "2", "0", "--rep2", "1", "1", "--kind", "wigner", "--format", "json"]);
    let rows = v.as_array().unwrap();
    assert!(!rows.is_empty());
    let mut sums = std::collections::BTreeMap::new();
    for r in rows {
        let val: SqrtRational = serde_json::from_value(r["value"].clone()).unwrap();
        let key = (r["rep3"].to_string(), r["states"][2].to_string());
        *sums.entry(key).or_insert_with(gt_core::Rational::default) += val.square();
    }
    for (key, s) in sums {
        let dim3 = {
            let rep: (u64, u64) = serde_json::from_str(&key.0).unwrap();
            (rep.0 + 1) * (rep.1 + 1) * (rep.0 + rep.1 + 2) / 2
        };
        assert_eq!(s * gt_core::Rational::from_integer(dim3.into()), gt_core::Rational::from_integer(1.into()), "{key:?}");
    }
}

#[test]
fn output_is_deterministic_across_job_counts() {
    let base = ["su3", "table", "--rep1", "2", "0", "--rep2", "2", "2", "--kind", "wigner", "--format", "csv"];
    let one = stdout(&[&base[..], &["--jobs", "1"]].concat());
    let four = stdout(&[&base[..], &["--jobs", "4"]].concat());
    let again = stdout(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(one, four);
    assert_eq!(four, again);
}
