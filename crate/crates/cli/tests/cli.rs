use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncbeil")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_gaussian_field_passes() {
    let out = run(&["verify", "--preset", "number_field:x^2+1", "--imax", "9"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verdict: PASS"));
}

#[test]
fn verify_json_schema() {
    let out = run(&["verify", "--preset", "dual_numbers", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    for key in ["algebra", "wedderburn", "tables", "triangle", "provenance"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    for key in ["k", "kprime", "middle"] {
        assert!(v["tables"].get(key).is_some(), "missing table {key}");
    }
    assert_eq!(v["triangle"]["verdict"], "PASS");
    assert_eq!(v["triangle"]["delta_rank"], 0);
    assert!(v["triangle"]["per_degree"].as_array().unwrap().len() >= 12);
}

#[test]
fn analyze_lists_three_factors() {
    let out = run(&["analyze", "--preset", "group_algebra:S3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["wedderburn"]["factors"].as_array().unwrap().len(), 3);
}

#[test]
fn corrupted_input_exits_two() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{{\"dim\": 2, \"unit\": [\"1\"").unwrap();
    let out = run(&["verify", "--input", f.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json_of(&out)["error"]["message"].is_string());
}

#[test]
fn non_unital_input_exits_two() {
    // e1 · e0 = 0 breaks the unit law
    let text = r#"{"dim": 2, "unit": ["1", "0"],
        "table": [[["1","0"],["0","1"]], [["0","0"],["1","0"]]]}"#;
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    let out = run(&["analyze", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn input_file_round_trip() {
    let text = r#"{"name": "dual", "dim": 2, "unit": ["1", "0"],
        "table": [[["1","0"],["0","1"]], [["0","1"],["0","0"]]]}"#;
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    let out = run(&["verify", "--input", f.path().to_str().unwrap(), "--imax", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["wedderburn"]["radical_dim"], 1);
    assert_eq!(v["triangle"]["verdict"], "PASS");
}

#[test]
fn unknown_preset_and_bad_flags() {
    assert_eq!(run(&["verify", "--preset", "bogus"]).status.code(), Some(2));
    let out = run(&["verify", "--preset", "rational", "--format", "json", "--path", "sideways"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["error"]["kind"], "usage");
    assert_eq!(run(&["verify"]).status.code(), Some(2));
}

#[test]
fn direct_outside_family_is_rejected() {
    let out = run(&["verify", "--preset", "group_algebra:C3", "--path", "direct", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["error"]["kind"], "unsupported");
}

#[test]
fn hodge_rows() {
    let out = run(&["hodge", "--preset", "tate:1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json_of(&out)["rows"].as_array().unwrap().clone();
    let at = |j: i64, i: i64| rows.iter().find(|r| r["j"] == j && r["i"] == i).unwrap().clone();
    // ℝ(1) twisted by 0: Kato H¹ = 1
    assert_eq!(at(0, 1)["raw"], 1);
    assert_eq!(at(0, 0)["raw"], 0);
    let out = run(&["hodge", "--preset", "spec_field:0,1", "--format", "json"]);
    let rows = json_of(&out)["rows"].as_array().unwrap().clone();
    let h1 = rows.iter().find(|r| r["j"] == 2 && r["i"] == 1).unwrap();
    assert_eq!(h1["iota_fixed"], 1);
    assert_eq!(h1["raw"], 2);
}

#[test]
fn cyclic_tables_text() {
    let out = run(&["cyclic", "--preset", "rational", "--truncation", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8_lossy(&out.stdout);
    assert!(s.contains("HH: 0=1 1=0"));
    assert!(s.contains("periodicity: PASS"));
    let out = run(&["cyclic", "--preset", "full_matrix:2", "--truncation", "4", "--format", "json"]);
    let v = json_of(&out);
    assert_eq!(v["HH"]["entries"][0]["dim"], 1);
}

#[test]
fn presets_listing() {
    let out = run(&["presets", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert!(v["algebra"].as_array().unwrap().iter().any(|p| p["name"] == "group_algebra:S3"));
}
