//! Batch comparison of diagram-computed knot complexes with the closed-form
//! classification of the `[2 n1, ±1, 2 n2]` families.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::predict::{
    class1, class1_as_stated, class2, class3_horizontal, class4_vertical,
    class4_vertical_as_stated, DecompositionClaim, Summand, SummandKind,
};
use crate::complex::{isomorphic, ComplexError};
use crate::diagram::{knot_complex, DiagramError};
use crate::tangle::{Sign, Tangle, TangleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Tangle(#[from] TangleError),
}

/// Which closed forms to compare against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Oracle {
    /// Closed forms with the corrections the diagram engine requires.
    Corrected,
    /// Closed forms exactly as written.
    AsStated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// `K^+([2n, 1, 2(n+k)])`.
    Class1,
    /// `K^-([2n, 1, 2(n+k)])`.
    Class2,
    /// `K^+([2 n1, 1, -2 n2])`.
    Class3,
    /// `K^-([2 n1, 1, -2 n2])`.
    Class4,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Class1 => "class1",
            Family::Class2 => "class2",
            Family::Class3 => "class3",
            Family::Class4 => "class4",
        };
        f.write_str(s)
    }
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Class1,
        Family::Class2,
        Family::Class3,
        Family::Class4,
    ];

    /// The tangle for grid parameters `(a, b)`: `(n, k)` for classes 1 and
    /// 2, `(n1, n2)` for classes 3 and 4.
    pub fn tangle(self, a: i64, b: i64) -> Result<Tangle, TangleError> {
        let (terms, sign) = match self {
            Family::Class1 => (vec![2 * a, 1, 2 * (a + b)], Sign::Plus),
            Family::Class2 => (vec![2 * a, 1, 2 * (a + b)], Sign::Minus),
            Family::Class3 => (vec![2 * a, 1, -2 * b], Sign::Plus),
            Family::Class4 => (vec![2 * a, 1, -2 * b], Sign::Minus),
        };
        Tangle::new(terms, sign)
    }

    pub fn claim(self, a: i64, b: i64, oracle: Oracle) -> DecompositionClaim {
        let knot = |family: &str, kind| DecompositionClaim {
            family: family.into(),
            summands: vec![Summand {
                kind,
                support: (0, 0),
                maslov: 0,
                dual: false,
            }],
        };
        match (self, oracle) {
            (Family::Class1, Oracle::Corrected) => class1(a, b),
            (Family::Class1, Oracle::AsStated) => class1_as_stated(a, b),
            (Family::Class2, _) => class2(a, b),
            (Family::Class3, _) => knot(
                "negative L-space (class 3)",
                SummandKind::NegativeLSpace {
                    horizontal: class3_horizontal(a, b),
                },
            ),
            (Family::Class4, o) => knot(
                "positive L-space (class 4)",
                SummandKind::PositiveLSpace {
                    vertical: match o {
                        Oracle::Corrected => class4_vertical(a, b),
                        Oracle::AsStated => class4_vertical_as_stated(a, b),
                    },
                },
            ),
        }
    }

    /// Grid ranges: `n in 1..=max_n, k in 0..=max_k` for classes 1 and 2,
    /// `n1 in 1..=max_n, n2 in 2..=max_k+1` for classes 3 and 4.
    pub fn grid(self, max_n: i64, max_k: i64) -> Vec<(i64, i64)> {
        let second = match self {
            Family::Class1 | Family::Class2 => 0..=max_k,
            Family::Class3 | Family::Class4 => 2..=max_k + 1,
        };
        (1..=max_n)
            .flat_map(|a| second.clone().map(move |b| (a, b)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub family: Family,
    pub a: i64,
    pub b: i64,
    pub tangle: String,
    pub pass: bool,
}

/// Whether the reduced knot complex of `t` is isomorphic to the claim. A
/// claim that does not describe a valid complex (such as a staircase with a
/// zero-length arrow) fails.
pub fn check(t: &Tangle, claim: &DecompositionClaim) -> Result<bool, VerifyError> {
    let computed = knot_complex(t)?;
    let Ok(predicted) = claim.complex() else {
        return Ok(false);
    };
    Ok(isomorphic(&computed, &predicted.reduce()).is_some())
}

pub fn check_cell(family: Family, a: i64, b: i64, oracle: Oracle) -> Result<Cell, VerifyError> {
    let t = family.tangle(a, b)?;
    let pass = check(&t, &family.claim(a, b, oracle))?;
    Ok(Cell {
        family,
        a,
        b,
        tangle: t.to_string(),
        pass,
    })
}

/// Every cell of every family, in a fixed order.
pub fn classification_grid(
    max_n: i64,
    max_k: i64,
    oracle: Oracle,
) -> Result<Vec<Cell>, VerifyError> {
    let mut out = Vec::new();
    for f in Family::ALL {
        for (a, b) in f.grid(max_n, max_k) {
            out.push(check_cell(f, a, b, oracle)?);
        }
    }
    Ok(out)
}

/// Text matrix per family: one row per first parameter, one column per
/// second parameter.
pub fn render_matrix(cells: &[Cell]) -> String {
    let mut s = String::new();
    for f in Family::ALL {
        let mine: Vec<&Cell> = cells.iter().filter(|c| c.family == f).collect();
        if mine.is_empty() {
            continue;
        }
        let mut cols: Vec<i64> = mine.iter().map(|c| c.b).collect();
        cols.sort_unstable();
        cols.dedup();
        let mut rows: Vec<i64> = mine.iter().map(|c| c.a).collect();
        rows.sort_unstable();
        rows.dedup();
        let (ra, rb) = match f {
            Family::Class1 | Family::Class2 => ("n", "k"),
            _ => ("n1", "n2"),
        };
        s.push_str(&format!("{f} ({ra} down, {rb} across)\n     "));
        for b in &cols {
            s.push_str(&format!("{b:>5}"));
        }
        s.push('\n');
        for a in &rows {
            s.push_str(&format!("{a:>5}"));
            for b in &cols {
                let mark = match mine.iter().find(|c| c.a == *a && c.b == *b) {
                    Some(c) if c.pass => "pass",
                    Some(_) => "FAIL",
                    None => "-",
                };
                s.push_str(&format!("{mark:>5}"));
            }
            s.push('\n');
        }
    }
    s
}
