//! End-to-end runs of the `gammaforge` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn gammaforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gammaforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = gammaforge(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(format!("{}-{name}", std::process::id()))
}

#[test]
fn tensor_of_f1_is_z() {
    let (code, v) = json(&["tensor", "--construct", "f1", "--max-level", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "gammaforge/1");
    assert_eq!(v["result"]["group"], "Z");
    assert_eq!(v["result"]["invariants"]["rank"], 1);
    assert!(v.get("duration_ms").is_none());
}

#[test]
fn timing_is_opt_in() {
    let (_, v) = json(&["tensor", "--construct", "f1", "--timing"]);
    assert!(v["duration_ms"].is_number());
}

#[test]
fn quotient_tensor_and_witness() {
    let q9 = ["--construct", "collapse", "--monoid", "z/9", "--sub", "3,6"];
    let (code, v) = json(&[&["tensor"][..], &q9].concat());
    assert_eq!(code, 0);
    assert_eq!(v["result"]["group"], "Z/3");

    let (code, v) = json(&[&["assoc-check", "--tuple", "1,2,2"][..], &q9].concat());
    assert_eq!(code, 0);
    assert_eq!(v["result"]["lhs"], serde_json::json!(["5"]));
    assert_eq!(v["result"]["rhs"], serde_json::json!(["2", "5", "8"]));
    assert_eq!(v["result"]["equality"], false);

    let (code, v) = json(
        &[
            &["assoc-check", "--tuple", "1,2,2", "--partition", "1,2|3"][..],
            &q9,
        ]
        .concat(),
    );
    assert_eq!(code, 0);
    assert_eq!(v["result"]["inclusion"], true);
    assert_eq!(v["result"]["equality"], false);
}

#[test]
fn adjunction_reports_bijection() {
    let (code, v) = json(&[
        "adjunction",
        "--construct",
        "em",
        "--monoid",
        "z/6",
        "--target",
        "z/4",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["report"]["left_count"], 2);
    assert_eq!(v["result"]["report"]["right_count"], 2);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "assoc-check",
        "--construct",
        "em",
        "--monoid",
        "z/4",
        "--seed",
        "3",
    ];
    let a = gammaforge(&args);
    let b = gammaforge(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn snf_of_inline_matrix() {
    let (code, v) = json(&["snf", "--matrix", "[[2,4],[6,8]]"]);
    assert_eq!(code, 0, "{v}");
    let text = v.to_string();
    assert!(text.contains("\"passed\":true"), "{text}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(gammaforge(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        gammaforge(&["tensor", "--construct", "em", "--monoid", "z/0"])
            .status
            .code(),
        Some(2)
    );
    let out = gammaforge(&[
        "assoc-check",
        "--construct",
        "em",
        "--monoid",
        "z/3",
        "--tuple",
        "1,7",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn malformed_input_exits_2() {
    let path = scratch("broken.json");
    std::fs::write(&path, "{\"max").unwrap();
    let out = gammaforge(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn plasma_file_validates_and_a_corrupted_copy_fails() {
    let path = scratch("plasma.json");
    let p = path.to_str().unwrap();
    let out = gammaforge(&[
        "embed-plasma",
        "--table",
        "f-one",
        "--max-level",
        "2",
        "--output",
        p,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        gammaforge(&["validate", "--input", p]).status.code(),
        Some(0)
    );

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    doc["action"]["1>2:[1]"] = serde_json::json!([0, 1]);
    let bad = scratch("plasma-bad.json");
    std::fs::write(&bad, doc.to_string()).unwrap();
    let (code, v) = json(&["validate", "--input", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(v["result"]["violation_count"].as_u64().unwrap() > 0);
}

#[test]
fn builtins_validate() {
    for args in [
        &["--construct", "em", "--monoid", "z2xz2"][..],
        &["--construct", "spherical", "--set", "a,b"],
        &["--construct", "f1"],
        &["--construct", "collapse", "--monoid", "z/8", "--sub", "4"],
        &["--construct", "plasma", "--table", "sign"],
    ] {
        let out = gammaforge(&[&["validate"][..], args].concat());
        assert_eq!(out.status.code(), Some(0), "{args:?}");
    }
}
