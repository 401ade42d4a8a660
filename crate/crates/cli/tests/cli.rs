use std::io::Write;
use std::process::{Command, Output, Stdio};

use orbichar::descriptor::{build_fgr, build_gset, from_json, FgrTerm};
use orbichar::k0::class_of;
use serde_json::Value;

const POINT_S3: &str = r#"{"group":"S3","cells":[{"dim":0}]}"#;
const POINT: &str = r#"{"group":"trivial","cells":[{"dim":0}]}"#;
const SIGN_C2: &str =
    r#"{"base":{"group":"C2","cells":[{"dim":0}]},"orbits":[{"basepoint":0,"characters":[{"1":"1/2"}]}]}"#;

fn run(args: &[&str], input: &str) -> Output {
    run_env(args, input, None)
}

fn run_env(args: &[&str], input: &str, max_group: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_orbichar"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    cmd.env_remove("ORBICHAR_MAX_GROUP");
    if let Some(v) = max_group {
        cmd.env("ORBICHAR_MAX_GROUP", v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    // the binary may exit before reading its input
    let _ = child.stdin.take().unwrap().write_all(input.as_bytes());
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn chi_of_a_point_under_s3() {
    let out = run(&["chi", "--k", "1"], POINT_S3);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["value"], 3);
    assert_eq!(v["tuples"], v["recursive"]);
}

#[test]
fn partition_numbers_from_verify_tamanoi() {
    let out = run(&["verify-tamanoi", "--k", "1", "--N", "6"], POINT);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["lhs"], serde_json::json!([1, 1, 2, 3, 5, 7, 11]));
    assert_eq!(v["rhs"], v["lhs"]);
}

#[test]
fn generalized_chi_of_the_sign_character() {
    let out = run(&["generalized", "--k", "1", "--phi", "1"], SIGN_C2);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"]["display"], "1 + L^(1/2)");
}

#[test]
fn pretty_output_goes_to_stderr() {
    let out = run(&["chi", "--k", "1", "--format", "pretty"], POINT_S3);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"], 3);
    assert!(!out.stderr.is_empty());
}

#[test]
fn failed_identity_exits_one() {
    let out = run(&["verify-wreath-bundle", "--k", "2", "--phi", "1,1", "--N", "2"], SIGN_C2);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn malformed_input_names_the_field() {
    let out = run(&["chi"], r#"{"group":"S9","cells":[{"dim":0}]}"#);
    assert_eq!(out.status.code(), Some(2));
    let err = json(&out)["error"].as_str().unwrap().to_string();
    assert!(err.contains("group"), "{err}");

    let out = run(&["chi"], r#"{"group":"S3","cells":[{"dim":"x"}]}"#);
    assert_eq!(out.status.code(), Some(2));
    let err = json(&out)["error"].as_str().unwrap().to_string();
    assert!(err.contains("cells[0].dim"), "{err}");
}

#[test]
fn size_bounds_give_a_hint() {
    let wreath = r#"{"group":{"type":"wreath","base":"S3","n":3},"cells":[{"dim":0}]}"#;
    let out = run(&["chi", "--max-group-order", "100"], wreath);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["error"].as_str().unwrap().contains("reduce n/N or group size"));

    let out = run_env(&["chi"], wreath, Some("100"));
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["verify-tamanoi", "--N", "9"], POINT);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["error"].as_str().unwrap().contains("reduce n/N"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for (args, input) in [
        (&["class"][..], POINT_S3),
        (&["zeta-series", "--N", "3"][..], POINT_S3),
        (&["verify-power-axioms", "--trials", "5", "--seed", "7"][..], ""),
    ] {
        let a = run(args, input);
        let b = run(args, input);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn emitted_classes_round_trip() {
    let x = r#"{"group":"C2","cells":[{"dim":0},{"dim":0},{"dim":1}],"action":{"0":[1,0,2]}}"#;
    let expected = class_of(&build_gset(&from_json(x).unwrap()).unwrap()).unwrap();

    let v = json(&run(&["class"], x));
    let terms: Vec<FgrTerm> = serde_json::from_value(v["class"].clone()).unwrap();
    assert_eq!(build_fgr(&terms).unwrap(), expected);
    assert_eq!(v["display"], "(trivial,0) + (C2,1)");

    let v = json(&run(&["lambda-series", "--N", "2"], x));
    let a1: Vec<FgrTerm> = serde_json::from_value(v["series"]["coeffs"][1].clone()).unwrap();
    assert_eq!(build_fgr(&a1).unwrap(), expected);
}

#[test]
fn selftest_reports_the_known_failures() {
    let out = run(&["selftest"], "");
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["failed"], serde_json::json!([10, 11]));
    assert_eq!(v["unexpected_failures"], serde_json::json!([]));
    assert_eq!(run(&["selftest"], "").stdout, out.stdout);
}

#[test]
fn corrupted_wreath_convention_is_caught() {
    let out = run(&["selftest", "--corrupt-wreath-convention"], "");
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["results"][0]["id"], 0);
    assert_eq!(v["results"][0]["passed"], false);
    assert_eq!(v["unexpected_failures"], serde_json::json!([0]));
}
