use std::process::Command;

use qhnf::cli::{run, EXIT_NON_GENERIC, EXIT_NOT_IN_CLASS, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn cli(args: &[&str]) -> qhnf::cli::Outcome {
    run(std::iter::once("qhnf").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut v = args.to_vec();
    v.extend(["--format", "json"]);
    let out = cli(&v);
    let text = if out.stdout.is_empty() { &out.stderr } else { &out.stdout };
    (out.code, serde_json::from_str(text).expect("json output"))
}

#[test]
fn analyze_cusp() {
    let (code, v) = json(&["analyze", "--k", "3", "--l", "2", "--a", "-2x", "--b", "3y^2", "--field", "rationals"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["spec"]["lambda"][0], "-1/6");
    assert_eq!(v["indexSum"], "-1");
    assert_eq!(v["camachoSad"][1]["index"], "-1/6");
}

#[test]
fn analyze_names_failed_condition() {
    // d(x y^2 - 2 x^2 y) plus x^3 dx: y no longer divides a
    let args = ["--k", "1", "--l", "1", "--a", "y^2 - 4x*y + x^3", "--b", "2x*y - 2x^2"];
    let out = cli(&[&["analyze"], &args[..]].concat());
    assert_eq!(out.code, EXIT_NOT_IN_CLASS, "{}", out.stderr);
    assert!(out.stderr.contains("condition (i)"), "{}", out.stderr);
    let out = cli(&[&["verify"], &args[..]].concat());
    assert_eq!(out.code, EXIT_NOT_IN_CLASS);
    assert!(out.stdout.contains("condition (i) axis divisibility: FAILS"), "{}", out.stdout);
}

#[test]
fn parse_error_reports_position() {
    let out = cli(&["analyze", "--k", "3", "--l", "2", "--a", "x +* y", "--b", "y"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("position 3"), "{}", out.stderr);
}

#[test]
fn counts_table() {
    let (code, v) = json(&["counts", "--k", "3", "--l", "2", "--n", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!((v["deltaPrime"].as_i64(), v["delta"].as_i64()), (Some(7), Some(8)));
    let (_, v) = json(&["counts", "--k", "3", "--l", "2", "--n", "1"]);
    assert_eq!(v["deltaPrime"], 1);
    for n in 1..4 {
        let (_, v) = json(&["counts", "--k", "5", "--l", "2", "--n", &n.to_string()]);
        assert_eq!(v["difference"].as_i64(), Some(n - 1));
    }
}

#[test]
fn seeded_normalize_round_trip() {
    let (code, v) = json(&["normalize", "--k", "2", "--l", "1", "--n", "1", "--seed", "3", "--degree", "5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["roundTrip"], true);
    assert_eq!(v["certificate"], true);
    assert_eq!(v["seed"], 3);
}

#[test]
fn json_is_deterministic() {
    let args = ["normalize", "--k", "3", "--l", "2", "--n", "1", "--seed", "9", "--degree", "7", "--format", "json"];
    assert_eq!(cli(&args), cli(&args));
}

#[test]
fn rational_indices_are_non_generic() {
    // d(xy(y - x)) has rational indices
    let out = cli(&["normalize", "--k", "1", "--l", "1", "--a", "2x*y - y^2", "--b", "x^2 - 2x*y", "--degree", "2"]);
    assert_eq!(out.code, EXIT_NON_GENERIC, "{}", out.stderr);
}

#[test]
fn zero_degree_is_usage_error() {
    let out = cli(&["normalize", "--k", "2", "--l", "1", "--n", "1", "--seed", "1", "--degree", "0"]);
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn form_file_input() {
    let dir = std::env::temp_dir().join(format!("qhnf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("cusp.json");
    std::fs::write(&good, r#"{"k": 3, "l": 2, "epsilon0": 0, "epsilonInf": 0, "a": "-2x", "b": "3y^2"}"#).unwrap();
    let out = cli(&["verify", "--input", good.to_str().unwrap(), "--field", "rationals"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);

    let bad = dir.join("missing.json");
    std::fs::write(&bad, r#"{"k": 3, "l": 2, "epsilon0": 0, "epsilonInf": 0, "a": "-2x"}"#).unwrap();
    let out = cli(&["verify", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("\"b\""), "{}", out.stderr);

    let coprime = dir.join("coprime.json");
    std::fs::write(&coprime, r#"{"k": 4, "l": 2, "epsilon0": 0, "epsilonInf": 0, "a": "x", "b": "y"}"#).unwrap();
    assert_eq!(cli(&["verify", "--input", coprime.to_str().unwrap()]).code, EXIT_USAGE);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn decompose_and_pullback() {
    let (code, v) = json(&["decompose", "--k", "1", "--l", "1", "--a", "y^2", "--b", "0"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["h"], "1/3*x*y^2");
    assert_eq!(v["s"], "2/3*y");
    let (code, v) = json(&["pullback", "--k", "3", "--l", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["principal"]["divisorExpX"], 2);
    assert_eq!(v["principal"]["divisorExpY"], 5);
    assert_eq!(v["neighbouring"]["divisorExpX"], 5);
    assert_eq!(v["neighbouring"]["divisorExpY"], 1);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qhnf");
    let st = Command::new(bin).args(["counts", "--k", "3", "--l", "2", "--n", "2"]).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&st.stdout).contains("delta' = 7"));
    let st = Command::new(bin).args(["counts", "--k", "4", "--l", "2", "--n", "2"]).output().unwrap();
    assert_eq!(st.status.code(), Some(3));
    let st = Command::new(bin).args(["frobnicate"]).output().unwrap();
    assert_eq!(st.status.code(), Some(3));
}
