//! The filtered mapping cone `X_m(K)` computing the knot complex of the
//! `(m,1)`-cable of the meridian in `-1` surgery on `K`, its truncations
//! `X_m(K)<l>`, and the explicit reduced model for `T(2, 4k+1)`.
//!
//! A cone generator `[x, i, j]` in column `A_s` has filtrations
//! `I = max(i, j - s)` and `J = max(i - m, j - s) - m s + m(m+1)/2`; in `B_s`
//! it has `I = i` and `J = i - m - m s + m(m+1)/2`. Both are `U`-equivariant,
//! so the cone is stored as a [`BifilteredComplex`] with `(i, j) := (I, J)`.
//! Maslov gradings are shifted by `-s(s+1)` on `A_s` and `-s(s+1) - 1` on
//! `B_s`, which makes `v_s` and `h_s` homogeneous of degree `-1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{isomorphic, BifilteredComplex, ComplexError, Generator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("cabling parameter m must be at least 1, got {0}")]
    InvalidM(i64),
    #[error("truncation level {ell} outside {lo}..={hi}")]
    WindowViolation { ell: i64, lo: i64, hi: i64 },
    #[error("input complex has no reflection symmetry")]
    NotSymmetric,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Column {
    A,
    B,
}

/// The cone `X_m(K)<ell>`: columns `A_s` for `-ell+m <= s <= ell` and `B_s`
/// for `-ell+m-1 <= s <= ell`.
#[derive(Debug, Clone)]
pub struct MappingCone {
    pub input: BifilteredComplex,
    pub m: i64,
    pub genus: i64,
    pub ell: i64,
    /// Reflection `x -> sum U^n y` along `i = j`, per input generator.
    reflection: Vec<Vec<(usize, i64)>>,
}

fn tri(m: i64) -> i64 {
    m * (m + 1) / 2
}

/// `f(m, s) = m(m+1)/2 - m s`.
pub fn f_ms(m: i64, s: i64) -> i64 {
    tri(m) - m * s
}

/// Cone column label for a flattened generator name.
pub fn cone_name(col: Column, s: i64, name: &str) -> String {
    format!("({col:?},{s},{name})")
}

/// Builds the full cone `X_m(K) = X_m(K)<g+m-1>`.
pub fn build_cone(k_complex: &BifilteredComplex, m: i64) -> Result<MappingCone, ConeError> {
    if m < 1 {
        return Err(ConeError::InvalidM(m));
    }
    let input = k_complex.reduce();
    let genus = input
        .generators()
        .iter()
        .map(Generator::alexander)
        .max()
        .unwrap_or(0)
        .max(0);
    let iso = isomorphic(&input.reflect(), &input).ok_or(ConeError::NotSymmetric)?;
    let mut reflection = vec![Vec::new(); input.len()];
    for (x, y, n) in iso.entries {
        reflection[x].push((y, n));
    }
    for r in &mut reflection {
        r.sort_unstable();
    }
    Ok(MappingCone {
        input,
        m,
        genus,
        ell: genus + m - 1,
        reflection,
    })
}

impl MappingCone {
    pub fn a_range(&self) -> std::ops::RangeInclusive<i64> {
        (-self.ell + self.m)..=self.ell
    }

    pub fn b_range(&self) -> std::ops::RangeInclusive<i64> {
        (-self.ell + self.m - 1)..=self.ell
    }

    /// `(maslov, I, J)` of `[x, i, j]` in the given column.
    pub fn filtration(&self, col: Column, s: i64, g: &Generator) -> (i64, i64, i64) {
        let m = self.m;
        match col {
            Column::A => (
                g.maslov - s * (s + 1),
                g.i.max(g.j - s),
                (g.i - m).max(g.j - s) - m * s + tri(m),
            ),
            Column::B => (g.maslov - s * (s + 1) - 1, g.i, g.i - m - m * s + tri(m)),
        }
    }

    /// The cone as one bifiltered complex, with generators named
    /// `(column,s,name)`.
    pub fn flatten(&self) -> Result<BifilteredComplex, ConeError> {
        let n = self.input.len();
        let a0 = *self.a_range().start();
        let b0 = *self.b_range().start();
        let na = self.a_range().count();
        let a_idx = |s: i64, x: usize| (s - a0) as usize * n + x;
        let b_idx = |s: i64, x: usize| na * n + (s - b0) as usize * n + x;
        let mut gens = Vec::new();
        for (col, range) in [(Column::A, self.a_range()), (Column::B, self.b_range())] {
            for s in range {
                for g in self.input.generators() {
                    let (maslov, i, j) = self.filtration(col, s, g);
                    gens.push(Generator::new(cone_name(col, s, &g.name), maslov, i, j));
                }
            }
        }
        let inner = self.input.edges();
        let mut edges = Vec::new();
        for s in self.a_range() {
            for &(x, y, u) in &inner {
                edges.push((a_idx(s, x), a_idx(s, y), u));
            }
            for x in 0..n {
                edges.push((a_idx(s, x), b_idx(s, x), 0));
                for &(y, p) in &self.reflection[x] {
                    edges.push((a_idx(s, x), b_idx(s - 1, y), p + s));
                }
            }
        }
        for s in self.b_range() {
            for &(x, y, u) in &inner {
                edges.push((b_idx(s, x), b_idx(s, y), u));
            }
        }
        Ok(BifilteredComplex::new(gens, edges)?)
    }

    /// Generator indices of the flattened cone lying in `<ell>`.
    fn window_names(&self, ell: i64) -> Vec<String> {
        let mut out = Vec::new();
        for s in (-ell + self.m)..=ell {
            for g in self.input.generators() {
                out.push(cone_name(Column::A, s, &g.name));
            }
        }
        for s in (-ell + self.m - 1)..=ell {
            for g in self.input.generators() {
                out.push(cone_name(Column::B, s, &g.name));
            }
        }
        out
    }

    fn with_ell(&self, ell: i64) -> MappingCone {
        MappingCone {
            ell,
            ..self.clone()
        }
    }
}

/// Evidence that `<ell>` splits as `<ell-1>` plus an acyclic summand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationStep {
    pub ell: i64,
    /// Generators of `A_{-ell+m}`, `B_{-ell+m-1}`, `A_ell` and `B_ell`.
    pub complement_size: usize,
    pub complement_homology_rank: usize,
    /// The two `J` differences of the change of basis on the surviving
    /// `B` generators, `ell` and `ell - m`.
    pub j_shifts: (i64, i64),
    /// `<ell-1>` is a subcomplex of `<ell>`.
    pub is_subcomplex: bool,
    /// `<ell>` is filtered homotopy equivalent to `<ell-1>` plus the
    /// complement, checked as isomorphism of reduced representatives.
    pub splits: bool,
}

impl TruncationStep {
    pub fn holds(&self) -> bool {
        self.complement_homology_rank == 0
            && self.j_shifts.0 >= 0
            && self.j_shifts.1 >= 0
            && self.is_subcomplex
            && self.splits
    }
}

/// Truncates one step at a time down to `<ell>`, certifying each step.
pub fn truncate(
    cone: &MappingCone,
    ell: i64,
) -> Result<(MappingCone, Vec<TruncationStep>), ConeError> {
    let (m, g) = (cone.m, cone.genus);
    if ell < m - 1 || ell > cone.ell {
        return Err(ConeError::WindowViolation {
            ell,
            lo: m - 1,
            hi: cone.ell,
        });
    }
    let mut steps = Vec::new();
    let mut current = cone.clone();
    while current.ell > ell {
        let l = current.ell;
        if l < m || l > g + m - 1 {
            return Err(ConeError::WindowViolation {
                ell: l,
                lo: m,
                hi: g + m - 1,
            });
        }
        let big = current.flatten()?;
        let small_names = current.window_names(l - 1);
        let mut inside = vec![false; big.len()];
        for name in &small_names {
            inside[big.index_of(name).expect("window is part of the cone")] = true;
        }
        let s_idx: Vec<usize> = (0..big.len()).filter(|&x| inside[x]).collect();
        let q_idx: Vec<usize> = (0..big.len()).filter(|&x| !inside[x]).collect();
        let is_subcomplex = s_idx
            .iter()
            .all(|&x| big.targets(x).iter().all(|&y| inside[y]));
        let sub = big.restricted(&s_idx)?;
        let quot = big.restricted(&q_idx)?;
        let rank = quot.homology_rank().0;
        let split = sub.direct_sum(&quot, "")?;
        let splits = isomorphic(&big.reduce(), &split.reduce()).is_some();
        steps.push(TruncationStep {
            ell: l,
            complement_size: q_idx.len(),
            complement_homology_rank: rank,
            j_shifts: (l, l - m),
            is_subcomplex,
            splits,
        });
        current = current.with_ell(l - 1);
    }
    Ok((current, steps))
}

/// `i^(t)_{m,s} = min(k + ceil((s-1)/2), 2k)`.
pub fn i_top(k: i64, s: i64) -> i64 {
    (k + ceil_half(s - 1)).min(2 * k)
}

/// `i^(b)_{m,s} = max(k + 1 + ceil((s-m)/2), 1)`.
pub fn i_bottom(k: i64, m: i64, s: i64) -> i64 {
    (k + 1 + ceil_half(s - m)).max(1)
}

fn ceil_half(x: i64) -> i64 {
    x.div_euclid(2) + x.rem_euclid(2)
}

/// The reduced model of `X_m(T(2,4k+1))<ell>`: generators `a^(s)_i`,
/// `b^(s)_i` in `A_s` and `beta_s` in `B_s` with `d a = b_i + U b_{i+1}` and
/// `d b_i = U^{2k+1-i} beta_s + U^{2k+1-i+s} beta_{s-1}`.
pub fn reduced_cone_model_window(k: i64, m: i64, ell: i64) -> Result<BifilteredComplex, ConeError> {
    if k < 1 || m < 2 {
        return Err(ConeError::InvalidParameter(format!(
            "need k >= 1 and m >= 2, got k={k}, m={m}"
        )));
    }
    if ell < m - 1 || ell > 2 * k + m - 1 {
        return Err(ConeError::WindowViolation {
            ell,
            lo: m - 1,
            hi: 2 * k + m - 1,
        });
    }
    let beta_name = |s: i64| cone_name(Column::B, s, &format!("b{}", 2 * k + 1));
    let beta_maslov = |s: i64| -s * (s + 1) - 1;
    let mut gens = Vec::new();
    let mut edges: Vec<(String, String, i64)> = Vec::new();
    for s in (-ell + m - 1)..=ell {
        gens.push(Generator::new(
            beta_name(s),
            beta_maslov(s),
            0,
            f_ms(m, s + 1),
        ));
    }
    for s in (-ell + m)..=ell {
        let (lo, hi) = (i_bottom(k, m, s), i_top(k, s));
        let bname = |i: i64| cone_name(Column::A, s, &format!("b{i}"));
        for i in lo..=hi + 1 {
            // d b_i = U^{2k+1-i} beta_s + ..., so M(b_i) = M(beta_s) - 2(2k+1-i) + 1
            let maslov = beta_maslov(s) - 2 * (2 * k + 1 - i) + 1;
            gens.push(Generator::new(
                bname(i),
                maslov,
                0,
                f_ms(m, s) - 2 * k - s - 2 + 2 * i,
            ));
            edges.push((bname(i), beta_name(s), 2 * k + 1 - i));
            edges.push((bname(i), beta_name(s - 1), 2 * k + 1 - i + s));
        }
        for i in lo..=hi {
            let aname = cone_name(Column::A, s, &format!("a{i}"));
            let maslov = beta_maslov(s) - 2 * (2 * k + 1 - i) + 2;
            gens.push(Generator::new(
                aname.clone(),
                maslov,
                0,
                f_ms(m, s) - 2 * k - s - 1 + 2 * i,
            ));
            edges.push((aname.clone(), bname(i), 0));
            edges.push((aname, bname(i + 1), 1));
        }
    }
    let named: Vec<(&str, &str, i64)> = edges
        .iter()
        .map(|(a, b, u)| (a.as_str(), b.as_str(), *u))
        .collect();
    Ok(BifilteredComplex::from_named(gens, &named)?)
}

/// The reduced model of the full cone `X_m(T(2,4k+1))`.
pub fn reduced_cone_model(k: i64, m: i64) -> Result<BifilteredComplex, ConeError> {
    reduced_cone_model_window(k, m, 2 * k + m - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{model, ModelKind};

    #[test]
    fn column_ranges() {
        let cone = build_cone(&model(ModelKind::C(2)).unwrap(), 2).unwrap();
        assert_eq!(cone.genus, 2);
        assert_eq!(cone.a_range(), -1..=3);
        assert_eq!(cone.b_range(), -2..=3);
    }

    #[test]
    fn rejects_bad_m() {
        let c = model(ModelKind::C(1)).unwrap();
        assert!(matches!(build_cone(&c, 0), Err(ConeError::InvalidM(0))));
    }

    #[test]
    fn model_index_ranges() {
        // k=1, m=2, s=1: i_top = 1, i_bottom = 2, so no a-generators
        assert_eq!(i_top(1, 1), 1);
        assert_eq!(i_bottom(1, 2, 1), 2);
        let c = reduced_cone_model_window(1, 2, 1).unwrap();
        let names: Vec<&str> = c.generators().iter().map(|g| g.name.as_str()).collect();
        assert!(names.contains(&"(A,1,b2)"));
        assert!(!names.iter().any(|n| n.starts_with("(A,1,a")));
    }

    #[test]
    fn model_shifts() {
        let (k, m) = (2, 3);
        let c = reduced_cone_model(k, m).unwrap();
        for s in -2 * k + 1..=2 * k + m - 1 {
            for i in i_bottom(k, m, s)..=i_top(k, s) + 1 {
                let b = c
                    .index_of(&cone_name(Column::A, s, &format!("b{i}")))
                    .unwrap();
                let lo = c.index_of(&cone_name(Column::B, s - 1, "b5")).unwrap();
                let hi = c.index_of(&cone_name(Column::B, s, "b5")).unwrap();
                assert_eq!(c.delta(b, lo), (2 * k + 1 - i + s, i - 1));
                assert_eq!(c.delta(b, hi), (2 * k + 1 - i, m - s + i - 1));
            }
        }
    }
}
