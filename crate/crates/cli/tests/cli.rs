use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use nilgrade_core::{check_conditions, LieAlgebra, Mode, SearchOutcome, WeightAssignment};
use serde_json::Value;

fn nilgrade(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilgrade"))
        .args(args)
        .env_remove("NILGRADE_JOBS")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    nilgrade(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(nilgrade(args).stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&full)).expect("valid JSON")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nilgrade-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn weights(v: &Value) -> WeightAssignment {
    serde_json::from_value(v.clone()).unwrap()
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["info", "--algebra", "L3_2"], 0),
        (&["info", "--algebra", "L9_99"], 2),
        (&["info"], 2),
        (&["cohomology", "--algebra", "L4_3"], 0),
        (&["cohomology", "--algebra", "L3_2", "--weights", "-1,-1,-2"], 0),
        (&["cohomology", "--algebra", "L3_2", "--weights", "-1,-2,-2"], 2),
        (&["cohomology", "--algebra", "L3_2", "--weights", "-1,-1"], 2),
        (&["verify", "--algebra", "L3_2", "--weights", "-1,-1,-2"], 0),
        (&["verify", "--algebra", "L4_3", "--weights", "-1,-1,-2,-3"], 1),
        (&["verify", "--algebra", "L4_3", "--weights", "-1,-1,-2,-3", "--mode", "w"], 0),
        (&["verify", "--algebra", "L3_2", "--weights", "-1,-2,-2"], 1),
        (&["verify", "--algebra", "L3_2", "--weights", "a,b,c"], 2),
        (&["verify", "--algebra", "L3_2", "--weights", "-1,-1,-2", "--mode", "x"], 2),
        (&["search", "--algebra", "L5_9"], 0),
        (&["search", "--algebra", "L5_8"], 1),
        (&["search", "--algebra", "L5_8", "--max-weight", "0"], 2),
        (&["table", "--dim", "3"], 0),
        (&["table", "--dim", "7"], 2),
        (&["catalog", "list"], 0),
        (&["catalog", "dump", "L6_19(-1)"], 0),
        (&["catalog", "dump", "nope"], 2),
        (&["--jobs", "0", "catalog", "list"], 2),
        (&["frobnicate"], 2),
    ];
    for (args, expected) in cases {
        assert_eq!(code(args), *expected, "nilgrade {}", args.join(" "));
    }
}

#[test]
fn unknown_name_suggests_close_matches() {
    let out = nilgrade(&["info", "--algebra", "L6_19"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("L6_19(-1)"));
}

#[test]
fn file_document_matches_catalog_entry() {
    let path = temp_file("l32.json", r#"{"name": "mine", "dim": 3, "brackets": [{"i": 1, "j": 2, "k": 3, "c": "1"}]}"#);
    let p = path.to_str().unwrap();
    let from_file = json(&["cohomology", "--file", p]);
    let from_catalog = json(&["cohomology", "--algebra", "L3_2"]);
    assert_eq!(from_file["betti"], from_catalog["betti"]);
    assert_eq!(code(&["verify", "--file", p, "--weights", "-1,-1,-2"]), 0);
    assert_eq!(code(&["info", "--file", p, "--algebra", "L3_2"]), 2);
}

#[test]
fn dumped_documents_load_back() {
    let dumped = stdout(&["catalog", "dump", "L5_8"]);
    let path = temp_file("l58.json", &dumped);
    let b_file = json(&["cohomology", "--file", path.to_str().unwrap()]);
    let b_name = json(&["cohomology", "--algebra", "L5_8"]);
    assert_eq!(b_file["betti"], b_name["betti"]);
}

#[test]
fn bad_documents_are_rejected() {
    let zero = temp_file("zero.json", r#"{"name": "z", "dim": 3, "brackets": [{"i": 1, "j": 2, "k": 3, "c": "0"}]}"#);
    assert_eq!(code(&["info", "--file", zero.to_str().unwrap()]), 2);
    // Jacobi fails on (X1, X2, X3)
    let jacobi = temp_file(
        "jacobi.json",
        r#"{"name": "j", "dim": 4, "brackets": [
            {"i": 1, "j": 2, "k": 3, "c": "1"},
            {"i": 1, "j": 3, "k": 4, "c": "1"},
            {"i": 2, "j": 3, "k": 4, "c": "1"},
            {"i": 2, "j": 4, "k": 3, "c": "1"}]}"#,
    );
    let out = nilgrade(&["info", "--file", jacobi.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let malformed = temp_file("bad.json", "{");
    assert_eq!(code(&["info", "--file", malformed.to_str().unwrap()]), 2);
    assert_eq!(code(&["info", "--file", "/nonexistent/nilgrade.json"]), 2);
}

#[test]
fn basis_change_preserves_betti_numbers() {
    let m = temp_file("change.json", r#"[[1, 1, 0], ["1/2", 1, 0], [0, 3, 2]]"#);
    let m = m.to_str().unwrap();
    let changed = json(&["cohomology", "--algebra", "L3_2", "--basis-change", m]);
    assert_eq!(changed["betti"], serde_json::json!([1, 2, 2, 1]));
    let singular = temp_file("singular.json", r#"[[1, 1, 0], [2, 2, 0], [0, 0, 1]]"#);
    assert_eq!(code(&["info", "--algebra", "L3_2", "--basis-change", singular.to_str().unwrap()]), 2);
    let wrong_size = temp_file("wrong.json", r#"[[1, 0], [0, 1]]"#);
    assert_eq!(code(&["info", "--algebra", "L3_2", "--basis-change", wrong_size.to_str().unwrap()]), 2);
}

#[test]
fn verify_json_round_trip() {
    let l = nilgrade_core::catalog::resolve("L5_9").unwrap();
    let v = json(&["verify", "--algebra", "L5_9", "--weights", "-1,-1,-2,-3,-3"]);
    let w = weights(&v["weights"]);
    let r = check_conditions(&l, &w).unwrap();
    assert_eq!(v["w"], Value::from(r.w_pass.unwrap()));
    assert_eq!(v["h"], Value::from(r.h_pass.unwrap()));
    assert_eq!(v["pass"], Value::from(r.passes(Mode::Wh)));
    assert_eq!(v["alarms"], serde_json::json!([]));
}

#[test]
fn search_json_round_trip() {
    for (name, mode) in [("L5_9", "wh"), ("L4_3", "w"), ("L5_8", "wh"), ("nmq:5,2", "wh")] {
        let l: LieAlgebra = nilgrade_core::catalog::resolve(name).unwrap();
        let text = stdout(&["--json", "search", "--algebra", name, "--mode", mode, "--all"]);
        let outcome: SearchOutcome = serde_json::from_str(&text).unwrap();
        assert!(outcome.exhausted);
        assert!(outcome.alarms.is_empty());
        for w in &outcome.found {
            assert!(check_conditions(&l, w).unwrap().passes(outcome.mode), "{name}: {w}");
        }
    }
}

#[test]
fn table_json_round_trip() {
    let v = json(&["table", "--dim", "5"]);
    let rows = v[0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    for row in rows {
        let l = nilgrade_core::catalog::resolve(row["name"].as_str().unwrap()).unwrap();
        for (cell, mode) in [("w", Mode::W), ("wh", Mode::Wh)] {
            let c = &row[cell];
            match c["grading"] {
                Value::Null => assert_eq!(c["verdict"], "no"),
                ref g => {
                    assert_eq!(c["verdict"], "yes");
                    assert!(check_conditions(&l, &weights(g)).unwrap().passes(mode));
                }
            }
        }
    }
}

#[test]
fn human_output_examples() {
    assert!(stdout(&["verify", "--algebra", "L3_2", "--weights", "-1,-1,-2"]).contains("homogeneous; W: pass; H: pass"));
    let none = stdout(&["search", "--algebra", "L5_8"]);
    assert!(none.contains("does not rule out"), "{none}");
    let list = stdout(&["catalog", "list"]);
    assert_eq!(list.lines().count(), 46);
}
