//! Golden files: canonical JSON outputs for a fixed set of inputs, one file
//! per case, stored as `{"kind","input","output"}`.
//!
//! The directory defaults to `tests/golden` in this crate and is overridden
//! by the `HFK_GOLDEN_DIR` environment variable.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::complex::{model, ModelKind};
use crate::cone::{build_cone, reduced_cone_model, ConeError};
use crate::diagram::{knot_complex, DiagramError};
use crate::phi::{phi_closed_form, phi_of_standard, to_standard, PhiError};
use crate::{ComplexError, Tangle, TangleError};

#[derive(Debug, Error)]
pub enum GoldenError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: malformed golden file: {message}")]
    Malformed { path: String, message: String },
    #[error(transparent)]
    Tangle(#[from] TangleError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Phi(#[from] PhiError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    /// Reduced knot complex of a tangle `sign:a1,...`.
    Cfk,
    /// Reduced flattened cone on `C(2k)`, input `k,m`.
    Cone,
    /// Phi table from the pipeline, input `k,m`.
    Phi,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoldenCase {
    pub kind: Kind,
    pub input: String,
    pub output: Value,
}

const CFK: [&str; 12] = [
    "+:0",
    "+:-2",
    "+:-4",
    "+:-6",
    "+:4",
    "+:6",
    "+:2,1,2",
    "+:2,1,4",
    "-:2,1,4",
    "+:2,1,-4",
    "-:2,1,-6",
    "+:-4,0,-2",
];
const CONE: [(i64, i64); 3] = [(1, 2), (1, 3), (2, 2)];
const PHI: [(i64, i64); 4] = [(1, 2), (1, 3), (2, 3), (2, 4)];

pub fn default_dir() -> PathBuf {
    std::env::var_os("HFK_GOLDEN_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden")))
}

fn file_name(kind: Kind, input: &str) -> String {
    let tag: String = input
        .chars()
        .map(|c| match c {
            '+' => 'p',
            '-' => 'm',
            ',' | ':' => '_',
            c => c,
        })
        .collect();
    let kind = match kind {
        Kind::Cfk => "cfk",
        Kind::Cone => "cone",
        Kind::Phi => "phi",
    };
    format!("{kind}_{tag}.json")
}

fn pair(s: &str) -> Option<(i64, i64)> {
    let (a, b) = s.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

/// Computes the current output for a case.
pub fn compute(kind: Kind, input: &str) -> Result<Value, GoldenError> {
    let bad = || GoldenError::Malformed {
        path: input.to_string(),
        message: "expected k,m".into(),
    };
    let to_value = |s: String| serde_json::from_str(&s).expect("own json is valid");
    match kind {
        Kind::Cfk => {
            let t: Tangle = input.parse()?;
            Ok(to_value(knot_complex(&t)?.to_json()))
        }
        Kind::Cone => {
            let (k, m) = pair(input).ok_or_else(bad)?;
            let red = build_cone(&model(ModelKind::C(2 * k))?, m)?
                .flatten()?
                .reduce();
            Ok(to_value(red.to_json()))
        }
        Kind::Phi => {
            let (k, m) = pair(input).ok_or_else(bad)?;
            let red = build_cone(&model(ModelKind::C(2 * k))?, m)?
                .flatten()?
                .reduce();
            let t = phi_of_standard(&to_standard(&red)?);
            Ok(serde_json::to_value(t).expect("tables serialize"))
        }
    }
}

/// The fixed case list.
pub fn inputs() -> Vec<(Kind, String)> {
    let mut v: Vec<(Kind, String)> = CFK.iter().map(|s| (Kind::Cfk, s.to_string())).collect();
    v.extend(CONE.iter().map(|(k, m)| (Kind::Cone, format!("{k},{m}"))));
    v.extend(PHI.iter().map(|(k, m)| (Kind::Phi, format!("{k},{m}"))));
    v
}

fn io(path: &Path, e: std::io::Error) -> GoldenError {
    GoldenError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

/// Writes every case to `dir`, returning the number of files.
pub fn write_dir(dir: &Path) -> Result<usize, GoldenError> {
    fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    let cases = inputs();
    for (kind, input) in &cases {
        let case = GoldenCase {
            kind: *kind,
            input: input.clone(),
            output: compute(*kind, input)?,
        };
        let path = dir.join(file_name(*kind, input));
        let text = serde_json::to_string_pretty(&case).expect("cases serialize") + "\n";
        fs::write(&path, text).map_err(|e| io(&path, e))?;
    }
    Ok(cases.len())
}

/// Compares every `*.json` file in `dir` with the current engine.
pub fn check_dir(dir: &Path) -> Result<Vec<(String, bool)>, GoldenError> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut out = Vec::new();
    for path in paths {
        let text = fs::read_to_string(&path).map_err(|e| io(&path, e))?;
        let case: GoldenCase = serde_json::from_str(&text).map_err(|e| GoldenError::Malformed {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let now = compute(case.kind, &case.input)?;
        let name = path
            .file_name()
            .map_or_else(String::new, |n| n.to_string_lossy().into_owned());
        out.push((name, now == case.output));
    }
    Ok(out)
}

/// Closed-form phi table for a golden phi input, for cross-checks.
pub fn closed_form_for(input: &str) -> Option<Value> {
    let (k, m) = pair(input)?;
    phi_closed_form(k, m)
        .ok()
        .map(|t| serde_json::to_value(t).expect("tables serialize"))
}

/// The hand-written reduced cone model for a golden cone input.
pub fn model_for(input: &str) -> Option<crate::BifilteredComplex> {
    let (k, m) = pair(input)?;
    reduced_cone_model(k, m).ok()
}
