//! End-to-end runs of the `hfk` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hfk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hfk"))
        .args(args)
        .env_remove("HFK_GOLDEN_DIR")
        .output()
        .expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is json")
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).expect("stderr is json")
}

#[test]
fn phi_single_case() {
    let o = hfk(&["phi", "--k", "1", "--m", "2"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(
        v["closed_form"],
        serde_json::json!({"(1,0)": 0, "(1,2)": 1})
    );
    assert_eq!(v["pipeline"], v["closed_form"]);
    assert_eq!(v["equal"], true);
}

#[test]
fn phi_grid_csv() {
    let o = hfk(&["phi", "--k", "2", "--m", "3", "--grid", "--csv"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,m,i,j,pipeline,closed_form"));
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f.len(), 6);
        assert_eq!(f[4], f[5], "{line}");
    }
}

#[test]
fn cfk_unknot_json() {
    let o = hfk(&["cfk", "--tangle", "+:0", "--json"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["generators"].as_array().unwrap().len(), 1);
}

#[test]
fn cfk_listing_and_dot() {
    let o = hfk(&["cfk", "--tangle", "+:2,1,2"]);
    assert!(o.status.success());
    assert!(!o.stdout.is_empty());
    let o = hfk(&["cfk", "--tangle", "+:2,1,2", "--dot"]);
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("digraph"));
}

#[test]
fn cone_truncation_report() {
    let o = hfk(&["cone", "--k", "1", "--m", "2", "--ell", "1", "--reduced"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert_eq!(v["genus"], 2);
    assert_eq!(v["ell"], 1);
    assert_eq!(v["truncation"].as_array().unwrap().len(), 2);
}

#[test]
fn cone_window_violation_is_an_error() {
    let o = hfk(&["cone", "--k", "1", "--m", "3", "--ell", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"], "cone");
}

#[test]
fn classification_small_grid_passes() {
    let o = hfk(&[
        "verify",
        "classification",
        "--max-n",
        "2",
        "--max-k",
        "2",
        "--json",
    ]);
    assert!(o.status.success());
    let cells = stdout_json(&o);
    let cells = cells.as_array().unwrap();
    // classes 1 and 2 take k in 0..=2, classes 3 and 4 take n2 in 2..=3
    assert_eq!(cells.len(), 2 * 2 * 3 + 2 * 2 * 2);
    assert!(cells.iter().all(|c| c["pass"] == true));
}

#[test]
fn classification_as_stated_reports_mismatch() {
    let o = hfk(&[
        "verify",
        "classification",
        "--max-n",
        "4",
        "--max-k",
        "4",
        "--as-stated",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "mismatch");
    assert!(String::from_utf8(o.stdout).unwrap().contains("FAIL"));
}

#[test]
fn invalid_tangle_is_reported_as_json() {
    let o = hfk(&["cfk", "--tangle", "+:1,2"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr_json(&o);
    assert_eq!(e["error"], "tangle");
    assert!(e["message"].is_string());
    assert!(o.stdout.is_empty());
}

#[test]
fn usage_errors_are_json() {
    let o = hfk(&["phi", "--k", "one", "--m", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"], "usage");
    let o = hfk(&["render", "--tangle", "+:-4", "--periods", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let a = hfk(&["cfk", "--tangle", "-:2,1,-6", "--json"]);
    let b = hfk(&["cfk", "--tangle", "-:2,1,-6", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let c = hfk_core::BifilteredComplex::from_json(text.trim()).unwrap();
    assert_eq!(c.to_json(), text.trim());
}

#[test]
fn render_svg() {
    let o = hfk(&["render", "--tangle", "+:-4", "--periods", "2"]);
    assert!(o.status.success());
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.starts_with("<svg") && s.trim_end().ends_with("</svg>"));
}

#[test]
fn golden_dir_override() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("golden_override");
    let _ = std::fs::remove_dir_all(&dir);
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_hfk"))
            .args(args)
            .env("HFK_GOLDEN_DIR", &dir)
            .output()
            .unwrap()
    };
    assert!(run(&["verify", "golden", "--update"]).status.success());
    assert!(run(&["verify", "golden"]).status.success());
    let path = dir.join("phi_1_2.json");
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replace("\"value\": 1", "\"value\": 2")).unwrap();
    let o = run(&["verify", "golden"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stdout)
        .unwrap()
        .contains("phi_1_2.json: FAIL"));
}

#[test]
fn shipped_golden_files_pass() {
    assert!(hfk(&["verify", "golden"]).status.success());
}
