//! End-to-end runs of the `bkl` binary.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bkl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bkl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("bkl-cli");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn build(name: &str, spec: &str, extra: &[&str]) -> PathBuf {
    let spec_path = tmp(&format!("{name}.spec.json"), spec);
    let model = PathBuf::from(env!("CARGO_TARGET_TMPDIR"))
        .join("bkl-cli")
        .join(format!("{name}.json"));
    let mut args = vec![
        "build",
        "-s",
        spec_path.to_str().unwrap(),
        "-o",
        model.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    let out = bkl(&args);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    model
}

#[test]
fn enumerate_prints_one_row_per_type() {
    let out = bkl(&["enumerate", "--dim", "6"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 5, "{text}");
    assert!(text.lines().next().unwrap().starts_with('n'));

    let json = stdout_json(&bkl(&["enumerate", "--dim", "5", "--format", "json"]));
    assert_eq!(json.as_array().unwrap().len(), 3);
}

#[test]
fn group_model_verifies_as_bismut_flat() {
    let model = build(
        "su3",
        r#"{"euclidean_rank": 0, "sasaki": [], "groups": [{"family": "su", "param": 3, "scale": 1.0}]}"#,
        &[],
    );
    let report = stdout_json(&bkl(&[
        "verify",
        "-i",
        model.to_str().unwrap(),
        "--expect",
        "bkl",
    ]));
    let flags = &report["flags"];
    assert_eq!(flags["bkl"], true);
    assert_eq!(flags["bismut_flat"], true);
    assert_eq!(flags["cyt"], true);
}

#[test]
fn decompose_recovers_the_spec() {
    let model = build(
        "r2s2",
        r#"{"euclidean_rank": 2,
            "sasaki": [{"model": "heisenberg", "c": 0.5}, {"model": "su2-berger", "c": 1.5}],
            "groups": [], "torus_complex": "random"}"#,
        &["--seed", "5"],
    );
    let d = stdout_json(&bkl(&["decompose", "-i", model.to_str().unwrap()]));
    assert_eq!(d["euclidean_rank"], 2);
    let cs: Vec<f64> = d["sasaki"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["c"].as_f64().unwrap())
        .collect();
    assert_eq!(cs.len(), 2);
    assert!(
        (cs[0] - 0.5).abs() < 1e-6 && (cs[1] - 1.5).abs() < 1e-6,
        "{cs:?}"
    );
    assert_eq!(d["r_B"], 2);
}

#[test]
fn roots_of_su2() {
    let alg = tmp(
        "su2.json",
        r#"{"dim": 3, "brackets": [[0, 1, 2, 1.0], [1, 2, 0, 1.0], [0, 2, 1, -1.0]], "metric": "identity"}"#,
    );
    let datum = stdout_json(&bkl(&["roots", "-i", alg.to_str().unwrap()]));
    assert_eq!(datum["roots"].as_array().unwrap().len(), 1);
    assert_eq!(datum["torus"].as_array().unwrap().len(), 1);
}

#[test]
fn verification_mismatch_exits_with_two() {
    let model = build(
        "hopf",
        r#"{"euclidean_rank": 1, "sasaki": [{"model": "heisenberg", "c": 1.0}], "groups": []}"#,
        &[],
    );
    let out = bkl(&[
        "verify",
        "-i",
        model.to_str().unwrap(),
        "--expect",
        "not-bkl",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mismatch"));
}

#[test]
fn malformed_input_exits_with_three() {
    let bad = tmp(
        "bad.json",
        r#"{"dim": 4, "brackets": [[2, 1, 0, 1.0]], "metric": "identity", "complex_structure": []}"#,
    );
    let out = bkl(&["verify", "-i", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("brackets[0]"));

    let odd = tmp(
        "odd.spec.json",
        r#"{"euclidean_rank": 0, "sasaki": [{"model": "heisenberg", "c": 1.0}], "groups": []}"#,
    );
    let out = bkl(&["build", "-s", odd.to_str().unwrap()]);
    assert_ne!(out.status.code(), Some(0));
}
