//! Bifiltered chain complexes over `F[U, U^-1]` with mod two coefficients.
//!
//! A generator carries a Maslov grading and a filtration level `(i, j)`.
//! Multiplying by `U` shifts `(maslov, i, j)` by `(-2, -1, -1)`. A differential
//! term `x -> U^u y` must drop Maslov grading by one, so `u` is determined by
//! the gradings and coefficients are just bits.

pub mod boxes;
pub mod f2;
pub mod iso;
pub mod json;
pub mod models;
pub mod predict;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use boxes::{insert_boxes, marking_count, Mark, MarkVariant, MarkedBasis};
pub use iso::{isomorphic, Isomorphism};
pub use models::{model, ModelKind};
pub use predict::{predicted_decomposition, DecompositionClaim, Summand};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("not a chain complex: {0}")]
    NotAChainComplex(String),
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("invalid model parameter: {0}")]
    InvalidParameter(String),
    #[error("mark sign does not match the requested twist sign")]
    SignMismatch,
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("tangle is outside the classified families: {0}")]
    Unclassified(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error("malformed json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub maslov: i64,
    pub i: i64,
    pub j: i64,
}

impl Generator {
    pub fn new(name: impl Into<String>, maslov: i64, i: i64, j: i64) -> Self {
        Generator {
            name: name.into(),
            maslov,
            i,
            j,
        }
    }

    /// Alexander grading `j - i`.
    pub fn alexander(&self) -> i64 {
        self.j - self.i
    }

    /// Position of the `U`-orbit: `(maslov - 2i, j - i)`.
    pub fn orbit_key(&self) -> (i64, i64) {
        (self.maslov - 2 * self.i, self.j - self.i)
    }

    fn sort_key(&self) -> (i64, i64, i64, &str) {
        (self.maslov, self.i, self.j, &self.name)
    }
}

/// A term `U^u * target` of a differential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub target: usize,
    pub u: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BifilteredComplex {
    gens: Vec<Generator>,
    diff: Vec<Vec<usize>>,
}

fn power(x: &Generator, y: &Generator) -> Option<i64> {
    let d = y.maslov - x.maslov + 1;
    (d % 2 == 0).then_some(d / 2)
}

impl BifilteredComplex {
    pub fn empty() -> Self {
        BifilteredComplex {
            gens: Vec::new(),
            diff: Vec::new(),
        }
    }

    /// Builds and validates a complex from generators and `(from, to, u)`
    /// edges. Repeated edges cancel in pairs.
    pub fn new(
        gens: Vec<Generator>,
        edges: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self, ComplexError> {
        let mut names = BTreeSet::new();
        for g in &gens {
            if !names.insert(g.name.as_str()) {
                return Err(ComplexError::DuplicateName(g.name.clone()));
            }
        }
        let n = gens.len();
        let mut sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (x, y, u) in edges {
            if x >= n || y >= n {
                return Err(ComplexError::UnknownGenerator(format!("index {x} or {y}")));
            }
            if power(&gens[x], &gens[y]) != Some(u) {
                return Err(ComplexError::InvalidGrading(format!(
                    "term {} -> U^{} {} does not drop Maslov grading by one",
                    gens[x].name, u, gens[y].name
                )));
            }
            if !sets[x].remove(&y) {
                sets[x].insert(y);
            }
        }
        let c = BifilteredComplex {
            gens,
            diff: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        };
        c.validate()?;
        Ok(c)
    }

    /// Builds a complex from generators and `(from, to, u)` edges given by name.
    pub fn from_named(
        gens: Vec<Generator>,
        edges: &[(&str, &str, i64)],
    ) -> Result<Self, ComplexError> {
        let index: HashMap<&str, usize> = gens
            .iter()
            .enumerate()
            .map(|(k, g)| (g.name.as_str(), k))
            .collect();
        let look = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| ComplexError::UnknownGenerator(s.to_string()))
        };
        let mut out = Vec::new();
        for (a, b, u) in edges {
            out.push((look(a)?, look(b)?, *u));
        }
        Self::new(gens, out)
    }

    fn validate(&self) -> Result<(), ComplexError> {
        for x in 0..self.len() {
            for &y in &self.diff[x] {
                let (di, dj) = self.delta(x, y);
                if di < 0 || dj < 0 {
                    return Err(ComplexError::InvalidGrading(format!(
                        "term {} -> {} raises a filtration (shift ({di},{dj}))",
                        self.gens[x].name, self.gens[y].name
                    )));
                }
            }
            let mut count: BTreeMap<usize, u32> = BTreeMap::new();
            for &y in &self.diff[x] {
                for &z in &self.diff[y] {
                    *count.entry(z).or_default() += 1;
                }
            }
            if let Some((z, _)) = count.iter().find(|(_, c)| **c % 2 == 1) {
                return Err(ComplexError::NotAChainComplex(format!(
                    "d^2 of {} contains {}",
                    self.gens[x].name, self.gens[*z].name
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, x: usize) -> &Generator {
        &self.gens[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    /// Targets of `d(x)`.
    pub fn targets(&self, x: usize) -> &[usize] {
        &self.diff[x]
    }

    pub fn terms(&self, x: usize) -> impl Iterator<Item = Term> + '_ {
        self.diff[x].iter().map(move |&y| Term {
            target: y,
            u: self.u_power(x, y),
        })
    }

    /// All `(from, to, u)` edges.
    pub fn edges(&self) -> Vec<(usize, usize, i64)> {
        (0..self.len())
            .flat_map(|x| self.terms(x).map(move |t| (x, t.target, t.u)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.diff.iter().map(Vec::len).sum()
    }

    /// The exponent `u` with `x -> U^u y` grading-compatible.
    pub fn u_power(&self, x: usize, y: usize) -> i64 {
        power(&self.gens[x], &self.gens[y]).expect("validated parity")
    }

    /// Filtration shift `(I(x) - I(U^u y), J(x) - J(U^u y))`.
    pub fn delta(&self, x: usize, y: usize) -> (i64, i64) {
        let u = self.u_power(x, y);
        let (a, b) = (&self.gens[x], &self.gens[y]);
        (a.i - b.i + u, a.j - b.j + u)
    }

    pub fn is_reduced(&self) -> bool {
        (0..self.len()).all(|x| self.diff[x].iter().all(|&y| self.delta(x, y) != (0, 0)))
    }

    /// Translates every generator by `(dm, di, dj)`.
    pub fn shifted(&self, dm: i64, di: i64, dj: i64) -> Self {
        let mut c = self.clone();
        for g in &mut c.gens {
            g.maslov += dm;
            g.i += di;
            g.j += dj;
        }
        c
    }

    /// Multiplies generator `x` by `U^t`, which changes no structure.
    pub fn with_u_translate(&self, x: usize, t: i64) -> Self {
        let mut c = self.clone();
        let g = &mut c.gens[x];
        g.maslov -= 2 * t;
        g.i -= t;
        g.j -= t;
        c
    }

    /// Moves every generator to `i = 0` along its `U`-orbit.
    pub fn at_column_zero(&self) -> Self {
        let mut c = self.clone();
        for g in &mut c.gens {
            g.maslov -= 2 * g.i;
            g.j -= g.i;
            g.i = 0;
        }
        c
    }

    pub fn renamed(&self, f: impl Fn(&str) -> String) -> Self {
        let mut c = self.clone();
        for g in &mut c.gens {
            g.name = f(&g.name);
        }
        c
    }

    /// Direct sum; generators of `other` are renamed with `prefix`.
    pub fn direct_sum(&self, other: &Self, prefix: &str) -> Result<Self, ComplexError> {
        let off = self.len();
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().map(|g| Generator {
            name: format!("{prefix}{}", g.name),
            ..g.clone()
        }));
        let mut edges: Vec<_> = self.edges();
        edges.extend(
            other
                .edges()
                .into_iter()
                .map(|(x, y, u)| (x + off, y + off, u)),
        );
        Self::new(gens, edges)
    }

    /// Direct sum of many complexes, each renamed with its tag.
    pub fn sum_of(parts: &[(String, BifilteredComplex)]) -> Result<Self, ComplexError> {
        let mut gens = Vec::new();
        let mut edges = Vec::new();
        for (tag, c) in parts {
            let off = gens.len();
            gens.extend(c.gens.iter().map(|g| Generator {
                name: format!("{tag}{}", g.name),
                ..g.clone()
            }));
            edges.extend(c.edges().into_iter().map(|(x, y, u)| (x + off, y + off, u)));
        }
        Self::new(gens, edges)
    }

    /// Restriction to a subset of generators (which must span a subcomplex or
    /// quotient for the result to be meaningful; `d^2 = 0` is re-checked).
    pub fn restricted(&self, keep: &[usize]) -> Result<Self, ComplexError> {
        let mut pos = vec![None; self.len()];
        for (k, &x) in keep.iter().enumerate() {
            pos[x] = Some(k);
        }
        let gens = keep.iter().map(|&x| self.gens[x].clone()).collect();
        let mut edges = Vec::new();
        for &x in keep {
            for t in self.terms(x) {
                if let Some(b) = pos[t.target] {
                    edges.push((pos[x].unwrap(), b, t.u));
                }
            }
        }
        Self::new(gens, edges)
    }

    /// Swaps the two filtrations.
    pub fn reflect(&self) -> Self {
        let mut c = self.clone();
        for g in &mut c.gens {
            std::mem::swap(&mut g.i, &mut g.j);
        }
        c
    }

    /// The dual complex, which models the mirror knot.
    pub fn dual(&self) -> Self {
        let gens = self
            .gens
            .iter()
            .map(|g| Generator {
                name: g.name.clone(),
                maslov: -g.maslov,
                i: -g.i,
                j: -g.j,
            })
            .collect();
        let edges = self.edges().into_iter().map(|(x, y, u)| (y, x, u));
        Self::new(gens, edges).expect("dual of a valid complex is valid")
    }

    /// Cancels every filtration-preserving term, choosing sources and targets
    /// in `(maslov, i, j, name)` order.
    pub fn reduce(&self) -> Self {
        let n = self.len();
        let mut rows: Vec<BTreeSet<usize>> = self
            .diff
            .iter()
            .map(|r| r.iter().copied().collect())
            .collect();
        let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (x, r) in rows.iter().enumerate() {
            for &y in r {
                cols[y].insert(x);
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| self.gens[a].sort_key().cmp(&self.gens[b].sort_key()));
        let mut rank = vec![0; n];
        for (k, &x) in order.iter().enumerate() {
            rank[x] = k;
        }
        let mut alive = vec![true; n];
        loop {
            let pick = order.iter().find_map(|&x| {
                if !alive[x] {
                    return None;
                }
                rows[x]
                    .iter()
                    .filter(|&&y| self.delta(x, y) == (0, 0))
                    .min_by_key(|&&y| rank[y])
                    .map(|&y| (x, y))
            });
            let Some((x, y)) = pick else { break };
            let row_x: Vec<usize> = rows[x].iter().copied().collect();
            let sources: Vec<usize> = cols[y].iter().copied().filter(|&z| z != x).collect();
            for z in sources {
                for &t in &row_x {
                    if !rows[z].remove(&t) {
                        rows[z].insert(t);
                        cols[t].insert(z);
                    } else {
                        cols[t].remove(&z);
                    }
                }
            }
            for v in [x, y] {
                for t in std::mem::take(&mut rows[v]) {
                    cols[t].remove(&v);
                }
                for s in std::mem::take(&mut cols[v]) {
                    rows[s].remove(&v);
                }
                alive[v] = false;
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&x| alive[x]).collect();
        let mut pos = vec![usize::MAX; n];
        for (k, &x) in keep.iter().enumerate() {
            pos[x] = k;
        }
        BifilteredComplex {
            gens: keep.iter().map(|&x| self.gens[x].clone()).collect(),
            diff: keep
                .iter()
                .map(|&x| rows[x].iter().map(|&t| pos[t]).collect())
                .collect(),
        }
    }

    /// Boundary matrix with `U = 1`, one row per source.
    fn boundary_rows(&self, keep: &[usize]) -> Vec<f2::BitRow> {
        let mut pos = vec![usize::MAX; self.len()];
        for (k, &x) in keep.iter().enumerate() {
            pos[x] = k;
        }
        keep.iter()
            .map(|&x| {
                let mut r = f2::BitRow::zeros(keep.len());
                for &y in &self.diff[x] {
                    if pos[y] != usize::MAX {
                        r.set(pos[y], true);
                    }
                }
                r
            })
            .collect()
    }

    /// Rank of homology over `F[U, U^-1]` and whether it is free. Every graded
    /// module over this graded field is free, so the second value is always
    /// true; the rank equals `dim H` after setting `U = 1`.
    pub fn homology_rank(&self) -> (usize, bool) {
        let all: Vec<usize> = (0..self.len()).collect();
        let r = f2::rank(self.boundary_rows(&all), self.len());
        (self.len() - 2 * r, true)
    }

    /// Dimension of homology of the terms with `delta = (0, *)`, graded by
    /// `maslov - 2i`. This is the vertical complex `C{i = 0}`.
    pub fn vertical_homology(&self) -> BTreeMap<i64, usize> {
        self.column_homology(|d| d.0 == 0, |g| g.maslov - 2 * g.i)
    }

    /// Dimension of homology of the terms with `delta = (*, 0)`, graded by
    /// `maslov - 2j`. This is the horizontal complex `C{j = 0}`.
    pub fn horizontal_homology(&self) -> BTreeMap<i64, usize> {
        self.column_homology(|d| d.1 == 0, |g| g.maslov - 2 * g.j)
    }

    fn column_homology(
        &self,
        keep_term: impl Fn((i64, i64)) -> bool,
        grade: impl Fn(&Generator) -> i64,
    ) -> BTreeMap<i64, usize> {
        let mut by_grade: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (x, g) in self.gens.iter().enumerate() {
            by_grade.entry(grade(g)).or_default().push(x);
        }
        let mut rank_out: BTreeMap<i64, usize> = BTreeMap::new();
        for (gr, xs) in &by_grade {
            let Some(ys) = by_grade.get(&(gr - 1)) else {
                continue;
            };
            let mut pos = HashMap::new();
            for (k, &y) in ys.iter().enumerate() {
                pos.insert(y, k);
            }
            let rows: Vec<f2::BitRow> = xs
                .iter()
                .map(|&x| {
                    let mut r = f2::BitRow::zeros(ys.len());
                    for &y in &self.diff[x] {
                        if keep_term(self.delta(x, y)) {
                            if let Some(&k) = pos.get(&y) {
                                r.set(k, true);
                            }
                        }
                    }
                    r
                })
                .collect();
            rank_out.insert(*gr, f2::rank(rows, ys.len()));
        }
        by_grade
            .iter()
            .map(|(gr, xs)| {
                let out = rank_out.get(gr).copied().unwrap_or(0);
                let inc = rank_out.get(&(gr + 1)).copied().unwrap_or(0);
                (*gr, xs.len() - out - inc)
            })
            .filter(|(_, d)| *d > 0)
            .collect()
    }

    /// Graded Euler characteristic `sum (-1)^maslov t^A`.
    pub fn alexander_polynomial(&self) -> BTreeMap<i64, i64> {
        let mut p: BTreeMap<i64, i64> = BTreeMap::new();
        for g in &self.gens {
            let sign = if g.maslov.rem_euclid(2) == 0 { 1 } else { -1 };
            *p.entry(g.alexander()).or_default() += sign;
        }
        p.retain(|_, c| *c != 0);
        p
    }

    /// Shifts Maslov gradings so the vertical homology sits in grading zero
    /// and shifts `j` so Alexander gradings are symmetric about zero.
    pub fn normalized(&self) -> Result<Self, ComplexError> {
        let vh = self.vertical_homology();
        let total: usize = vh.values().sum();
        if total != 1 {
            return Err(ComplexError::InvalidGrading(format!(
                "vertical homology has rank {total}, expected 1"
            )));
        }
        let g0 = *vh.keys().next().unwrap();
        let (lo, hi) = self
            .gens
            .iter()
            .map(Generator::alexander)
            .fold((i64::MAX, i64::MIN), |(l, h), a| (l.min(a), h.max(a)));
        if (lo + hi) % 2 != 0 {
            return Err(ComplexError::InvalidGrading(
                "Alexander gradings cannot be centred".into(),
            ));
        }
        Ok(self.shifted(-g0, 0, -(lo + hi) / 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> BifilteredComplex {
        model(ModelKind::C(1)).unwrap()
    }

    #[test]
    fn rejects_bad_gradings() {
        let g = vec![Generator::new("x", 0, 0, 0), Generator::new("y", 0, 0, 0)];
        assert!(matches!(
            BifilteredComplex::new(g, [(0, 1, 0)]),
            Err(ComplexError::InvalidGrading(_))
        ));
    }

    #[test]
    fn rejects_d_squared() {
        let g = vec![
            Generator::new("x", 2, 0, 0),
            Generator::new("y", 1, 0, 0),
            Generator::new("z", 0, 0, 0),
        ];
        assert!(matches!(
            BifilteredComplex::new(g, [(0, 1, 0), (1, 2, 0)]),
            Err(ComplexError::NotAChainComplex(_))
        ));
    }

    #[test]
    fn cancels_same_filtration_pair() {
        let g = vec![Generator::new("x", 1, 0, 0), Generator::new("y", 0, 0, 0)];
        let c = BifilteredComplex::new(g, [(0, 1, 0)]).unwrap();
        assert!(c.reduce().is_empty());
    }

    #[test]
    fn reduced_is_fixed() {
        let c = trefoil();
        assert!(c.is_reduced());
        assert_eq!(c.reduce(), c);
    }

    #[test]
    fn trefoil_invariants() {
        let c = trefoil();
        assert_eq!(c.homology_rank(), (1, true));
        let p: Vec<(i64, i64)> = c.alexander_polynomial().into_iter().collect();
        assert_eq!(p, vec![(-1, 1), (0, -1), (1, 1)]);
        assert_eq!(
            c.vertical_homology().into_iter().collect::<Vec<_>>(),
            vec![(0, 1)]
        );
        assert_eq!(c.normalized().unwrap(), c);
    }

    #[test]
    fn empty_complex() {
        assert_eq!(BifilteredComplex::empty().homology_rank(), (0, true));
    }

    #[test]
    fn dual_is_involution() {
        let c = trefoil();
        assert_eq!(c.dual().dual(), c);
        assert_eq!(c.reflect().reflect(), c);
    }
}
