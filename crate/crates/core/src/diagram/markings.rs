//! Marked bases for additional full twists of the middle term.
//!
//! The marks are read off the diagram engine: the complex after one more
//! full twist is split as the base complex plus boxes `D_1`, and each box
//! marks the base generator sharing its aligned corner (`y` for `+`, `x1`
//! for `-`). The split is checked by isomorphism before marks are returned.

use std::collections::BTreeMap;

use crate::complex::{insert_boxes, isomorphic, model, Mark, MarkedBasis, ModelKind};
use crate::tangle::{Sign, Tangle};
use crate::BifilteredComplex;

use super::{build_diagram, DiagramError};

fn reduced(t: &Tangle) -> Result<BifilteredComplex, DiagramError> {
    Ok(build_diagram(t)?.complex()?.reduce())
}

/// `U`-orbit position `(maslov - 2i, j - i)`.
type Grade = (i64, i64);

fn grade_counts(c: &BifilteredComplex) -> BTreeMap<Grade, i64> {
    let mut out = BTreeMap::new();
    for g in c.generators() {
        *out.entry(g.orbit_key()).or_insert(0) += 1;
    }
    out
}

/// Marks recording where `sigma^{±2}` on the middle term adds boxes.
///
/// `t` must have length three with middle term in `-1..=1`.
pub fn compute_markings(t: &Tangle, twist: Sign) -> Result<MarkedBasis, DiagramError> {
    let terms = t.terms();
    if terms.len() != 3 {
        return Err(DiagramError::InvalidWord);
    }
    if terms[1].abs() > 1 {
        return Err(DiagramError::UnsupportedMiddleTerm(terms[1]));
    }
    let base = reduced(t)?;
    let mut next = terms.to_vec();
    next[1] += 2 * twist.value();
    let twisted_t = Tangle::new(next, t.sign()).map_err(|_| DiagramError::InvalidWord)?;
    let twisted = reduced(&twisted_t)?;

    let unit = model(ModelKind::Box)?;
    let anchor = unit
        .index_of(match twist {
            Sign::Plus => "y",
            Sign::Minus => "x1",
        })
        .expect("box corners are named");
    let a = unit.generator(anchor).orbit_key();
    let offsets: Vec<Grade> = unit
        .generators()
        .iter()
        .map(|g| {
            let k = g.orbit_key();
            (k.0 - a.0, k.1 - a.1)
        })
        .collect();

    let mut extra = grade_counts(&twisted);
    for (k, v) in grade_counts(&base) {
        *extra.entry(k).or_insert(0) -= v;
    }
    if extra.values().any(|&v| v < 0) {
        return Err(DiagramError::NotBoxSplit(format!(
            "{twisted_t} lacks part of the base complex"
        )));
    }
    extra.retain(|_, v| *v > 0);

    let mut marks = MarkedBasis::default();
    let mark = match twist {
        Sign::Plus => Mark::Plus,
        Sign::Minus => Mark::Minus,
    };
    while let Some((&first, _)) = extra.iter().next() {
        // the lowest remaining grading is a corner of some box; try each
        // corner role in turn
        let placed = offsets.iter().find_map(|&(dm, da)| {
            let p = (first.0 - dm, first.1 - da);
            let fits = offsets
                .iter()
                .all(|&(om, oa)| extra.get(&(p.0 + om, p.1 + oa)).is_some_and(|&v| v > 0));
            fits.then_some(p)
        });
        let Some(p) = placed else {
            return Err(DiagramError::NotBoxSplit(format!(
                "grading {first:?} of {twisted_t} is not part of a box"
            )));
        };
        for &(om, oa) in &offsets {
            let key = (p.0 + om, p.1 + oa);
            let v = extra.get_mut(&key).expect("checked above");
            *v -= 1;
            if *v == 0 {
                extra.remove(&key);
            }
        }
        let owner = base
            .generators()
            .iter()
            .find(|g| g.orbit_key() == p)
            .ok_or_else(|| {
                DiagramError::NotBoxSplit(format!("box at {p:?} has no base generator"))
            })?;
        marks.add(mark, &owner.name, 1);
    }

    let rebuilt = insert_boxes(&base, &marks, 1, twist)?;
    if isomorphic(&rebuilt, &twisted).is_none() {
        return Err(DiagramError::NotBoxSplit(format!(
            "{twisted_t} is not the base complex plus boxes"
        )));
    }
    Ok(marks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn middle_term_range() {
        let t: Tangle = "+:2,3,2".parse().unwrap();
        assert_eq!(
            compute_markings(&t, Sign::Plus),
            Err(DiagramError::UnsupportedMiddleTerm(3))
        );
    }
}
