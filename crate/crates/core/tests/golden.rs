//! Stored outputs still match the engine.

use hfk_core::complex::isomorphic;
use hfk_core::complex::BifilteredComplex;
use hfk_core::golden::{
    check_dir, closed_form_for, compute, default_dir, inputs, model_for, GoldenCase, Kind,
};

#[test]
fn every_golden_file_matches() {
    let results = check_dir(&default_dir()).unwrap();
    assert_eq!(results.len(), inputs().len());
    let bad: Vec<_> = results.iter().filter(|(_, ok)| !ok).collect();
    assert!(bad.is_empty(), "stale golden files: {bad:?}");
}

#[test]
fn golden_files_cross_check() {
    for entry in std::fs::read_dir(default_dir()).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let case: GoldenCase = serde_json::from_str(&text).unwrap();
        match case.kind {
            Kind::Phi => assert_eq!(Some(case.output), closed_form_for(&case.input)),
            Kind::Cone => {
                let c = BifilteredComplex::from_json(&case.output.to_string()).unwrap();
                assert!(isomorphic(&c, &model_for(&case.input).unwrap()).is_some());
            }
            Kind::Cfk => {
                let c = BifilteredComplex::from_json(&case.output.to_string()).unwrap();
                assert_eq!(c.homology_rank().0, 1, "{}", case.input);
            }
        }
    }
}

#[test]
fn malformed_input_is_an_error() {
    assert!(compute(Kind::Cone, "3").is_err());
    assert!(compute(Kind::Cfk, "+:1").is_err());
}
