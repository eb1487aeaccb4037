//! JSON form of a complex:
//! `{"generators":[{"name","maslov","i","j"}],"differential":[{"from","to","u"}]}`.

use serde::{Deserialize, Serialize};

use super::{BifilteredComplex, ComplexError, Generator};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: String,
    pub to: String,
    pub u: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub generators: Vec<Generator>,
    pub differential: Vec<EdgeJson>,
}

impl From<&BifilteredComplex> for ComplexJson {
    fn from(c: &BifilteredComplex) -> Self {
        let g = c.generators();
        ComplexJson {
            generators: g.to_vec(),
            differential: c
                .edges()
                .into_iter()
                .map(|(x, y, u)| EdgeJson {
                    from: g[x].name.clone(),
                    to: g[y].name.clone(),
                    u,
                })
                .collect(),
        }
    }
}

impl TryFrom<ComplexJson> for BifilteredComplex {
    type Error = ComplexError;

    fn try_from(j: ComplexJson) -> Result<Self, Self::Error> {
        let edges: Vec<(&str, &str, i64)> = j
            .differential
            .iter()
            .map(|e| (e.from.as_str(), e.to.as_str(), e.u))
            .collect();
        BifilteredComplex::from_named(j.generators.clone(), &edges)
    }
}

impl BifilteredComplex {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ComplexJson::from(self)).expect("plain data serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&ComplexJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, ComplexError> {
        let j: ComplexJson =
            serde_json::from_str(s).map_err(|e| ComplexError::Json(e.to_string()))?;
        j.try_into()
    }
}
