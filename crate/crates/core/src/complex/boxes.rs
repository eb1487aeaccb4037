//! Marked bases, box insertion for full twists of the middle term, and the
//! closed-form marking counts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{model, BifilteredComplex, ComplexError, ModelKind};
use crate::tangle::Sign;

/// Mark counts per generator name.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedBasis {
    pub plus_marks: BTreeMap<String, u64>,
    pub minus_marks: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mark {
    Plus,
    Minus,
}

impl MarkedBasis {
    pub fn total(&self, sign: Sign) -> u64 {
        self.of(sign).values().sum()
    }

    pub fn of(&self, sign: Sign) -> &BTreeMap<String, u64> {
        match sign {
            Sign::Plus => &self.plus_marks,
            Sign::Minus => &self.minus_marks,
        }
    }

    pub fn add(&mut self, mark: Mark, name: &str, count: u64) {
        if count == 0 {
            return;
        }
        let map = match mark {
            Mark::Plus => &mut self.plus_marks,
            Mark::Minus => &mut self.minus_marks,
        };
        *map.entry(name.to_string()).or_default() += count;
    }
}

/// Adds `m` boxes `D_1` per mark of the given sign. For `+` the box's `y`
/// sits at the marked generator; for `-` its `x1` does.
pub fn insert_boxes(
    c: &BifilteredComplex,
    marks: &MarkedBasis,
    m: u64,
    sign: Sign,
) -> Result<BifilteredComplex, ComplexError> {
    if marks.total(sign) == 0 && marks.total(sign_flip(sign)) > 0 && m > 0 {
        return Err(ComplexError::SignMismatch);
    }
    let unit = model(ModelKind::Box)?;
    let x1 = unit.index_of("x1").expect("box has x1");
    let x1g = unit.generator(x1).clone();
    let mut parts = vec![(String::new(), c.clone())];
    for (name, &count) in marks.of(sign) {
        let p = c
            .index_of(name)
            .map(|k| c.generator(k).clone())
            .ok_or_else(|| ComplexError::UnknownGenerator(name.clone()))?;
        let placed = match sign {
            Sign::Plus => unit.shifted(p.maslov, p.i, p.j),
            Sign::Minus => unit.shifted(p.maslov - x1g.maslov, p.i - x1g.i, p.j - x1g.j),
        };
        for copy in 0..count * m {
            parts.push((format!("box[{name}#{copy}]."), placed.clone()));
        }
    }
    BifilteredComplex::sum_of(&parts)
}

fn sign_flip(s: Sign) -> Sign {
    s.flip()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MarkVariant {
    /// Marks on the `T(n, n+1)` staircase.
    M,
    /// Marks on the `T(n, n-1)` staircase.
    MPrime,
}

/// Closed-form count of marks on the `l`-th marked generator.
pub fn marking_count(variant: MarkVariant, n: i64, k: i64, l: i64) -> Result<u64, ComplexError> {
    if n < 1 || l < 1 || l > n - 1 {
        return Err(ComplexError::OutOfRange(format!(
            "need n >= 1 and 1 <= l <= n-1, got n={n}, l={l}"
        )));
    }
    let v = match variant {
        MarkVariant::M => {
            if k == 0 || k == n {
                return Err(ComplexError::OutOfRange(format!("k={k} excluded for m")));
            }
            if k > n {
                k - n
            } else if k >= 1 {
                n - l + (l - k).min(0) + (k + l - n).min(0)
            } else {
                -k
            }
        }
        MarkVariant::MPrime => {
            if k == 0 || k == -n {
                return Err(ComplexError::OutOfRange(format!("k={k} excluded for m'")));
            }
            if k < -n {
                -k - n
            } else if k <= -1 {
                n - l + (l - n - k).max(0) + (k + l).max(0)
            } else {
                k
            }
        }
    };
    u64::try_from(v).map_err(|_| ComplexError::OutOfRange(format!("negative count {v}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        assert_eq!(marking_count(MarkVariant::M, 3, 1, 1).unwrap(), 1);
        for l in 1..=1 {
            assert_eq!(marking_count(MarkVariant::M, 2, 3, l).unwrap(), 1);
        }
        assert_eq!(marking_count(MarkVariant::MPrime, 2, 1, 1).unwrap(), 1);
        assert!(marking_count(MarkVariant::M, 3, 0, 1).is_err());
        assert!(marking_count(MarkVariant::M, 3, 3, 1).is_err());
        assert!(marking_count(MarkVariant::MPrime, 3, -3, 1).is_err());
    }

    #[test]
    fn closed_form_symmetry() {
        for n in 2..=8 {
            for k in 1..n {
                for l in 1..n {
                    let a = marking_count(MarkVariant::M, n, k, l).unwrap();
                    assert_eq!(a, marking_count(MarkVariant::M, n, k, n - l).unwrap());
                    assert_eq!(a, marking_count(MarkVariant::M, n, n - k, l).unwrap());
                }
            }
        }
    }

    #[test]
    fn zero_marks_is_identity() {
        let c = model(ModelKind::C(1)).unwrap();
        let out = insert_boxes(&c, &MarkedBasis::default(), 3, Sign::Plus).unwrap();
        assert_eq!(out, c);
    }

    #[test]
    fn one_plus_mark_aligns_y() {
        let c = model(ModelKind::C(1)).unwrap();
        let mut marks = MarkedBasis::default();
        marks.add(Mark::Plus, "a1", 1);
        let out = insert_boxes(&c, &marks, 1, Sign::Plus).unwrap();
        assert_eq!(out.len(), c.len() + 4);
        let y = out.index_of("box[a1#0].y").unwrap();
        let a1 = out.index_of("a1").unwrap();
        let (gy, ga) = (out.generator(y), out.generator(a1));
        assert_eq!((gy.maslov, gy.i, gy.j), (ga.maslov, ga.i, ga.j));
    }

    #[test]
    fn sign_mismatch() {
        let c = model(ModelKind::C(1)).unwrap();
        let mut marks = MarkedBasis::default();
        marks.add(Mark::Minus, "a1", 1);
        assert_eq!(
            insert_boxes(&c, &marks, 1, Sign::Plus),
            Err(ComplexError::SignMismatch)
        );
    }
}
