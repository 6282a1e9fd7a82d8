use std::process::{Command, Output};

use serde_json::Value;

fn chowcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chowcalc"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = chowcalc(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn coeffs(v: &Value) -> Vec<i64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap().parse().unwrap())
        .collect()
}

#[test]
fn hilbert_from_file_and_quick() {
    let (code, v) = json(&["hilbert", "--input", "inputs/fig1.json", "--all-engines"]);
    assert_eq!(code, 0);
    assert_eq!(coeffs(&v["hilbert"]), [1, 4, 5, 4, 1]);
    let (code, v) = json(&["hilbert", "--quick", "K(5)", "--check-properties"]);
    assert_eq!(code, 0);
    assert_eq!(coeffs(&v["hilbert"]), [1, 16, 16, 1]);
    assert_eq!(v["properties"]["real_rooted"], true);
    let (code, v) = json(&["hilbert", "--quick", "K(4)", "--building", "max", "--engine", "recursion"]);
    assert_eq!(code, 0);
    assert_eq!(v["engines"].as_array().unwrap().len(), 2);
}

#[test]
fn json_is_deterministic() {
    let args = ["--format", "json", "hilbert", "--input", "inputs/k4min.json", "--all-engines", "--identities"];
    let strip = |out: Output| {
        let mut v: Value = serde_json::from_slice(&out.stdout).unwrap();
        v.as_object_mut().unwrap().remove("stats");
        v.to_string()
    };
    let a = strip(chowcalc(&args));
    let b = strip(chowcalc(&args));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn poincare_and_check() {
    let (code, v) = json(&["poincare-m0n", "--n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(coeffs(&v["poincare"]), [1, 16, 16, 1]);
    assert_eq!(v["methods"].as_object().unwrap().len(), 6);
    let (code, v) = json(&["poincare-m0n", "--n", "9", "--method", "stirling"]);
    assert_eq!(code, 0);
    assert_eq!(v["methods"].as_object().unwrap().len(), 1);

    let (code, v) = json(&["check", "1,53,73,101,115,101,73,53,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["properties"]["log_concave"], false);
    assert_eq!(v["properties"]["first_violation_index"], 2);
    let (code, v) = json(&["check", "1", "4", "6", "4", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["properties"]["real_rooted"], true);
}

#[test]
fn lattice_and_building() {
    let (code, v) = json(&["lattice", "--quick", "K(4)", "--dump", "--mobius"]);
    assert_eq!(code, 0);
    assert_eq!(v["flat_count"], 15);
    assert_eq!(coeffs(&v["characteristic_polynomial"]), [-6, 11, -6, 1]);
    let (code, v) = json(&["building", "--quick", "K(4)", "--validate", "--stats"]);
    assert_eq!(code, 0);
    assert_eq!(v["valid"], true);
    assert_eq!(v["members"].as_array().unwrap().len(), 11);
}

#[test]
fn exit_codes() {
    // invalid input
    let (code, v) = json(&["check", "1", "x"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "Parse");
    let (code, v) = json(&["hilbert", "--input", "no/such/file.json"]);
    assert_eq!(code, 2);
    assert!(v["error"]["message"].as_str().unwrap().contains("no/such/file.json"));
    let (code, _) = json(&["poincare-m0n", "--n", "13", "--method", "rewriting"]);
    assert_eq!(code, 2);
    let (code, _) = json(&["examples", "nope"]);
    assert_eq!(code, 2);
    // clap usage errors
    assert_eq!(chowcalc(&["hilbert"]).status.code(), Some(2));
    assert_eq!(chowcalc(&["frobnicate"]).status.code(), Some(2));
    // validation failure of a non-building set
    let dir = std::env::temp_dir().join(format!("chowcalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"polymatroid": {"type": "uniform", "k": 4, "n": 5}, "building_set": [["1"], ["2"], ["3"], ["4"], ["5"], ["1", "2"], ["2", "3"], ["1", "2", "3", "4", "5"]]}"#,
    )
    .unwrap();
    let (code, v) = json(&["building", "--input", bad.to_str().unwrap(), "--validate"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "NotABuildingSet");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn examples_list_and_run() {
    let (code, v) = json(&["examples", "--list"]);
    assert_eq!(code, 0);
    assert_eq!(v.as_array().unwrap().len(), 5);
    let (code, v) = json(&["examples", "fig1", "k4"]);
    assert_eq!(code, 0);
    assert!(v["examples"].as_array().unwrap().iter().all(|r| r["pass"] == true));
}

#[test]
fn text_output() {
    let out = chowcalc(&["hilbert", "--quick", "U(3,5)"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("H = 1 + x + x^2"), "{text}");
}
