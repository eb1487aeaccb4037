//! Closed-form decompositions of the knot complexes of the classified
//! blown-down two-bridge families.

use serde::{Deserialize, Serialize};

use super::boxes::{marking_count, MarkVariant};
use super::models::{staircase_from_vertical, torus_knot};
use super::{model, BifilteredComplex, ComplexError, ModelKind};
use crate::tangle::{equivalent_presentations, Sign, Tangle};

/// An arrow length in an L-space staircase; `overline` flags the arrows
/// whose endpoint carries no mark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub length: i64,
    pub overline: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SummandKind {
    Model(ModelKind),
    /// Positive torus knot `T(p,q)`, or its mirror.
    Torus {
        p: i64,
        q: i64,
        mirror: bool,
    },
    /// Positive L-space staircase given by vertical arrow lengths.
    PositiveLSpace {
        vertical: Vec<Arrow>,
    },
    /// Negative L-space staircase given by horizontal arrow lengths.
    NegativeLSpace {
        horizontal: Vec<Arrow>,
    },
}

/// One summand placed so that its anchor generator has the given Maslov
/// grading and filtration level. Knot-like summands are anchored by their
/// own normalization and carry `(0, 0)` and grading `0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub kind: SummandKind,
    pub support: (i64, i64),
    pub maslov: i64,
    /// Whether the placed summand is replaced by its dual (mirror).
    pub dual: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionClaim {
    pub family: String,
    pub summands: Vec<Summand>,
}

fn lengths(arrows: &[Arrow]) -> Vec<i64> {
    arrows.iter().map(|a| a.length).collect()
}

impl Summand {
    fn knot(kind: SummandKind) -> Self {
        Summand {
            kind,
            support: (0, 0),
            maslov: 0,
            dual: false,
        }
    }

    fn placed(kind: ModelKind, support: (i64, i64), maslov: i64) -> Self {
        Summand {
            kind: SummandKind::Model(kind),
            support,
            maslov,
            dual: false,
        }
    }

    pub fn complex(&self) -> Result<BifilteredComplex, ComplexError> {
        let base = match &self.kind {
            SummandKind::Model(k) => model(*k)?,
            SummandKind::Torus { p, q, mirror } => {
                let t = torus_knot(*p, *q)?;
                if *mirror {
                    t.dual()
                } else {
                    t
                }
            }
            SummandKind::PositiveLSpace { vertical } => {
                staircase_from_vertical(&lengths(vertical))?
            }
            SummandKind::NegativeLSpace { horizontal } => {
                staircase_from_vertical(&lengths(horizontal))?.dual()
            }
        };
        let placed = base.shifted(self.maslov, self.support.0, self.support.1);
        Ok(if self.dual { placed.dual() } else { placed })
    }
}

impl DecompositionClaim {
    /// The direct sum of all summands.
    pub fn complex(&self) -> Result<BifilteredComplex, ComplexError> {
        let parts = self
            .summands
            .iter()
            .enumerate()
            .map(|(k, s)| Ok((format!("s{k}."), s.complex()?)))
            .collect::<Result<Vec<_>, ComplexError>>()?;
        BifilteredComplex::sum_of(&parts)
    }

    /// The claim for the mirror knot: every summand is dualized.
    fn dual(mut self) -> Self {
        for s in &mut self.summands {
            s.dual = !s.dual;
        }
        self.family = format!("mirror of {}", self.family);
        self
    }

    pub fn count(&self, kind: &SummandKind) -> usize {
        self.summands.iter().filter(|s| &s.kind == kind).count()
    }
}

/// Predicted decomposition of `CFK(K^sign(terms))`.
pub fn predicted_decomposition(t: &Tangle) -> Result<DecompositionClaim, ComplexError> {
    let pres =
        equivalent_presentations(t).map_err(|e| ComplexError::Unclassified(e.to_string()))?;
    let mut ordered: Vec<_> = pres.iter().filter(|p| !p.mirror).collect();
    ordered.extend(pres.iter().filter(|p| p.mirror));
    for p in ordered {
        if let Some(claim) = direct(&p.tangle)? {
            // A mirror presentation describes the mirror knot, whose complex
            // is the dual.
            return Ok(if p.mirror { claim.dual() } else { claim });
        }
    }
    Err(ComplexError::Unclassified(t.to_string()))
}

/// Classified families in their own presentation, or `None`.
fn direct(t: &Tangle) -> Result<Option<DecompositionClaim>, ComplexError> {
    let sign = t.sign();
    match *t.terms() {
        [a] if sign == Sign::Plus => Ok(Some(length_one(a / 2))),
        [a1, b, a3] if b % 2 == 0 && b != 0 && sign == Sign::Plus && a1 != 0 && a3 != 0 => {
            two_b_sum(a1 / 2, b.abs() / 2, a3 / 2).map(Some)
        }
        [a1, 1, a3] if a1 > 0 && a3 > 0 => {
            let (n1, n2) = (a1 / 2, a3 / 2);
            let (n, k) = (n1.min(n2), (n1 - n2).abs());
            Ok(Some(match sign {
                Sign::Plus => class1(n, k),
                Sign::Minus => class2(n, k),
            }))
        }
        [a1, 1, a3] if a1 > 0 && a3 < -2 => {
            let (n1, n2) = (a1 / 2, -a3 / 2);
            Ok(Some(match sign {
                Sign::Plus => DecompositionClaim {
                    family: "negative L-space (class 3)".into(),
                    summands: vec![Summand::knot(SummandKind::NegativeLSpace {
                        horizontal: class3_horizontal(n1, n2),
                    })],
                },
                Sign::Minus => DecompositionClaim {
                    family: "positive L-space (class 4)".into(),
                    summands: vec![Summand::knot(SummandKind::PositiveLSpace {
                        vertical: class4_vertical(n1, n2),
                    })],
                },
            }))
        }
        _ => Ok(None),
    }
}

/// `K^+([2n])`.
fn length_one(n: i64) -> DecompositionClaim {
    let kind = if n == 0 {
        SummandKind::Model(ModelKind::C0)
    } else if n > 0 {
        SummandKind::Torus {
            p: n - 1,
            q: n,
            mirror: true,
        }
    } else {
        SummandKind::Torus {
            p: -n,
            q: -n + 1,
            mirror: true,
        }
    };
    let kind = match kind {
        SummandKind::Torus { p: 0, .. } => SummandKind::Model(ModelKind::C0),
        k => k,
    };
    DecompositionClaim {
        family: "length one".into(),
        summands: vec![Summand::knot(kind)],
    }
}

/// Marked generators of the length-one staircase `K^+([2n])` with their
/// mark counts for the twist `[2(n + k), 2b, -2k]`, as indices into the
/// staircase generators ordered from the top Alexander grading.
pub fn length_one_marks(n_total: i64, k: i64) -> Result<Vec<(usize, u64)>, ComplexError> {
    let mut out = Vec::new();
    if n_total == 0 {
        out.push((0, k.unsigned_abs()));
    } else if n_total > 0 {
        let n = n_total;
        for l in 1..n {
            out.push((
                (2 * l - 2) as usize,
                marking_count(MarkVariant::MPrime, n, k, l)?,
            ));
        }
    } else {
        let n = -n_total;
        for l in 1..n {
            out.push((
                (2 * l - 1) as usize,
                marking_count(MarkVariant::M, n, k, l)?,
            ));
        }
    }
    Ok(out)
}

/// `K^+([2 n1, 2b, 2 n2])` with `b > 0`.
fn two_b_sum(n1: i64, b: i64, n2: i64) -> Result<DecompositionClaim, ComplexError> {
    let n = n1 + n2;
    let k = -n2;
    let base = length_one(n);
    let staircase = base.summands[0].complex()?;
    let mut order: Vec<usize> = (0..staircase.len()).collect();
    order.sort_by_key(|&x| -staircase.generator(x).alexander());
    let mut summands = base.summands.clone();
    for (idx, count) in length_one_marks(n, k)? {
        let p = staircase.generator(order[idx]);
        for _ in 0..count * b as u64 {
            summands.push(Summand::placed(ModelKind::Box, (p.i, p.j), p.maslov));
        }
    }
    Ok(DecompositionClaim {
        family: "even middle term".into(),
        summands,
    })
}

fn tri(x: i64) -> i64 {
    x * (x + 1) / 2
}

/// `K^+([2 n1, 1, 2 n2])` with `n = min`, `k = |n1 - n2|`.
///
/// For `k >= 3` the diagram places each pair of `D_s` boxes
/// `(k-1)(k-2)/2` steps lower on the diagonal than [`class1_as_stated`].
pub fn class1(n: i64, k: i64) -> DecompositionClaim {
    class1_with(n, k, if k >= 3 { (k - 1) * (k - 2) / 2 } else { 0 })
}

/// The class-1 decomposition with the box supports exactly as written in
/// the closed form.
pub fn class1_as_stated(n: i64, k: i64) -> DecompositionClaim {
    class1_with(n, k, 0)
}

fn class1_with(n: i64, k: i64, lower: i64) -> DecompositionClaim {
    let f = |s: i64| -(n - s) * (n - s - 1) / 2 - lower;
    let mut summands = vec![if k <= 2 {
        Summand::knot(SummandKind::Model(ModelKind::C(n)))
    } else {
        Summand::knot(SummandKind::Model(ModelKind::Cnk(n, k)))
    }];
    if k == 0 {
        for s in 1..n {
            for _ in 0..2 {
                summands.push(Summand::placed(ModelKind::D(s), (f(s), f(s)), -1));
            }
        }
    } else {
        for s in 1..=n {
            if k == 1 && s == n {
                summands.push(Summand::placed(ModelKind::D(n), (0, 0), -1));
                continue;
            }
            let a = f(s) + (k - 1) * (k - 2) / 2;
            let b = f(s) - (n - s + 1) * k + 1;
            summands.push(Summand::placed(ModelKind::D(s), (a, b), -1));
            summands.push(Summand::placed(ModelKind::D(s), (b, a), -1));
        }
    }
    DecompositionClaim {
        family: "class 1".into(),
        summands,
    }
}

/// `K^-([2 n1, 1, 2 n2])` with `n = min`, `k = |n1 - n2|`.
pub fn class2(n: i64, k: i64) -> DecompositionClaim {
    let mut summands = vec![if k <= 1 {
        Summand::knot(SummandKind::Model(ModelKind::C0))
    } else {
        Summand::knot(SummandKind::Model(ModelKind::Cpnk(n, k)))
    }];
    for s in 1..=n {
        let t = tri(n - s);
        let a = (tri(k) + (n - s) * k) + t;
        if k == 0 && s == n {
            summands.push(Summand::placed(ModelKind::D(n), (0, 0), 0));
            continue;
        }
        summands.push(Summand::placed(ModelKind::D(s), (a, t), 0));
        summands.push(Summand::placed(ModelKind::D(s), (t, a), 0));
    }
    DecompositionClaim {
        family: "class 2".into(),
        summands,
    }
}

fn ones(count: i64, out: &mut Vec<Arrow>) {
    for _ in 0..count.max(0) {
        out.push(Arrow {
            length: 1,
            overline: false,
        });
    }
}

fn arrow(length: i64, overline: bool) -> Arrow {
    Arrow { length, overline }
}

/// Horizontal arrow lengths of `K^+([2 n1, 1, -2 n2])`.
pub fn class3_horizontal(n1: i64, n2: i64) -> Vec<Arrow> {
    let mut v = Vec::new();
    if n2 >= n1 {
        for s in 1..n1 {
            ones(s - 1, &mut v);
            v.push(arrow(n1 + n2 - 2 * s, false));
        }
        for s in n1..n2 {
            ones(n1 - 1, &mut v);
            v.push(arrow(n2 - s, true));
            ones(1, &mut v);
        }
        ones((n1 + 2) * (n1 - 1) / 2, &mut v);
    } else {
        for s in 1..n2 {
            ones(s - 1, &mut v);
            v.push(arrow(n1 + n2 - 2 * s, false));
        }
        for s in n2..n1 {
            ones(n2 - 1, &mut v);
            v.push(arrow(n1 - s, true));
        }
        ones((n2 + 2) * (n2 - 1) / 2, &mut v);
    }
    v
}

/// Vertical arrow lengths of `K^-([2 n1, 1, -2 n2])`.
///
/// When `n2 <= n1 + 1` the first overlined arrow has length `n1 - n2 + 2`;
/// [`class4_vertical_as_stated`] keeps `n1 - n2 + 1`, which vanishes at
/// `n2 = n1 + 1`.
pub fn class4_vertical(n1: i64, n2: i64) -> Vec<Arrow> {
    class4_with(n1, n2, 2)
}

pub fn class4_vertical_as_stated(n1: i64, n2: i64) -> Vec<Arrow> {
    class4_with(n1, n2, 1)
}

fn class4_with(n1: i64, n2: i64, first: i64) -> Vec<Arrow> {
    let mut v = Vec::new();
    if n2 >= n1 + 2 {
        for s in 1..=n1 {
            ones(s - 1, &mut v);
            v.push(arrow(n1 + n2 - 2 * s, false));
        }
        for s in n1 + 1..=n2 - 2 {
            ones(n1, &mut v);
            v.push(arrow(n2 - s - 1, true));
        }
        ones(n1 * (n1 + 3) / 2, &mut v);
    } else {
        for s in 1..=n2 - 2 {
            ones(s - 1, &mut v);
            v.push(arrow(n1 + n2 - 2 * s, false));
        }
        ones(n2 - 2, &mut v);
        v.push(arrow(n1 - n2 + first, true));
        for s in n2..=n1 {
            ones(n2 - 1, &mut v);
            v.push(arrow(n1 - s + 1, true));
        }
        ones(n2 * (n2 - 1) / 2, &mut v);
    }
    v
}
