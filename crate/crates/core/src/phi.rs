//! Standard complexes over the ring
//! `X = F[U_B, W_B, V_T, W_T] / (U_B V_T, ...)` and the concordance
//! homomorphisms `phi_{i,j}` read from them.
//!
//! Standardization runs in two passes. The first works over `F[U, V]`: it
//! applies filtered changes of basis `y -> y + U^d y'` that lower the number
//! of differential terms and discards acyclic connected components. This
//! realizes the truncation of a cone to its window `<m-1>`. The second pass
//! substitutes `U -> U_B + W_{T,0}` and `V -> V_T + W_{B,0}`, so each term
//! becomes a bottom-ideal monomial plus a top-ideal monomial, and greedily
//! applies monomial changes of basis until the differential is a single
//! path whose edges alternate between the two ideals.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use num_rational::Ratio;
use num_traits::{One as _, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{BifilteredComplex, ComplexError, Generator};
use crate::cone::{i_bottom, i_top};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhiError {
    #[error("complex could not be brought to standard form: {0}")]
    NotSimplifiable(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("csv: {0}")]
    Csv(String),
}

/// A monomial of `X`. `B(a, b)` is `U_B^a W_{B,0}^b` and `T(a, b)` is
/// `V_T^a W_{T,0}^b`; since `U_B W_{B,i} = W_{B,i+1}`, negative `a` is
/// allowed once `b >= 1`. Products of a bottom and a top monomial vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mono {
    One,
    B(i64, i64),
    T(i64, i64),
}

impl Mono {
    fn bottom(a: i64, b: i64) -> Option<Mono> {
        Self::make(a, b, Mono::B)
    }

    fn top(a: i64, b: i64) -> Option<Mono> {
        Self::make(a, b, Mono::T)
    }

    fn make(a: i64, b: i64, f: fn(i64, i64) -> Mono) -> Option<Mono> {
        match (a, b) {
            (0, 0) => Some(Mono::One),
            _ if b > 0 || (b == 0 && a > 0) => Some(f(a, b)),
            _ => None,
        }
    }

    /// The product, or `None` when it vanishes.
    pub fn checked_mul(self, o: Mono) -> Option<Mono> {
        match (self, o) {
            (Mono::One, x) | (x, Mono::One) => Some(x),
            (Mono::B(a, b), Mono::B(c, d)) => Mono::bottom(a + c, b + d),
            (Mono::T(a, b), Mono::T(c, d)) => Mono::top(a + c, b + d),
            _ => None,
        }
    }

    /// `self / o` when it is a monomial of `X`.
    pub fn checked_div(self, o: Mono) -> Option<Mono> {
        match (self, o) {
            (x, Mono::One) => Some(x),
            (Mono::B(a, b), Mono::B(c, d)) => Mono::bottom(a - c, b - d),
            (Mono::T(a, b), Mono::T(c, d)) => Mono::top(a - c, b - d),
            _ => None,
        }
    }

    pub fn is_top(self) -> bool {
        matches!(self, Mono::T(..))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mono::One => write!(f, "1"),
            Mono::B(a, b) => write!(f, "U_B^{a} W_B^{b}"),
            Mono::T(a, b) => write!(f, "V_T^{a} W_T^{b}"),
        }
    }
}

type Entry = BTreeSet<Mono>;

fn scale(e: &Entry, l: Mono) -> Entry {
    e.iter().filter_map(|&p| l.checked_mul(p)).collect()
}

fn xor_into(acc: &mut Entry, e: &Entry) {
    for &p in e {
        if !acc.remove(&p) {
            acc.insert(p);
        }
    }
}

/// Differential over `X`, one sparse row per source.
#[derive(Debug, Clone)]
struct XMatrix {
    rows: Vec<BTreeMap<usize, Entry>>,
}

impl XMatrix {
    fn terms(&self) -> usize {
        self.rows
            .iter()
            .flat_map(|r| r.values())
            .map(BTreeSet::len)
            .sum()
    }

    fn get(&self, x: usize, t: usize) -> Option<&Entry> {
        self.rows[x].get(&t)
    }

    fn sources(&self, t: usize) -> Vec<usize> {
        (0..self.rows.len())
            .filter(|&v| self.rows[v].contains_key(&t))
            .collect()
    }

    /// New values of the cells touched by the basis change
    /// `x -> x + l x'`: row `x` gains `l` times row `x'`, then every entry
    /// on `x` is copied onto `x'` times `l`.
    fn change(&self, x: usize, xp: usize, l: Mono) -> HashMap<(usize, usize), Entry> {
        let mut cells: HashMap<(usize, usize), Entry> = HashMap::new();
        let read = |cells: &HashMap<(usize, usize), Entry>, c: (usize, usize)| {
            cells
                .get(&c)
                .cloned()
                .or_else(|| self.get(c.0, c.1).cloned())
                .unwrap_or_default()
        };
        for (&t, e) in &self.rows[xp] {
            let mut v = read(&cells, (x, t));
            xor_into(&mut v, &scale(e, l));
            cells.insert((x, t), v);
        }
        let mut col: Vec<usize> = self.sources(x);
        if cells.get(&(x, x)).is_some_and(|e| !e.is_empty()) {
            col.push(x);
        }
        for v in col {
            let e = read(&cells, (v, x));
            let mut w = read(&cells, (v, xp));
            xor_into(&mut w, &scale(&e, l));
            cells.insert((v, xp), w);
        }
        cells
    }

    fn cost(&self, cells: &HashMap<(usize, usize), Entry>) -> i64 {
        cells
            .iter()
            .map(|(&(v, t), e)| e.len() as i64 - self.get(v, t).map_or(0, |o| o.len() as i64))
            .sum()
    }

    fn apply(&mut self, cells: HashMap<(usize, usize), Entry>) {
        for ((v, t), e) in cells {
            if e.is_empty() {
                self.rows[v].remove(&t);
            } else {
                self.rows[v].insert(t, e);
            }
        }
    }

    fn candidates(&self) -> BTreeSet<(usize, usize, Mono)> {
        let n = self.rows.len();
        let mut out = BTreeSet::new();
        let mut cols: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (x, r) in self.rows.iter().enumerate() {
            for &t in r.keys() {
                cols[t].push(x);
            }
        }
        // clear an entry of row x using row x'
        for (t, src) in cols.iter().enumerate() {
            for &x in src {
                for &xp in src {
                    if x == xp {
                        continue;
                    }
                    for &p in &self.rows[x][&t] {
                        for &q in &self.rows[xp][&t] {
                            if let Some(l) = p.checked_div(q) {
                                out.insert((x, xp, l));
                            }
                        }
                    }
                }
            }
        }
        // clear an entry of column t using column t'
        for r in &self.rows {
            for (&t, e) in r {
                for (&tp, f) in r {
                    if t == tp {
                        continue;
                    }
                    for &p in e {
                        for &q in f {
                            if let Some(l) = p.checked_div(q) {
                                out.insert((tp, t, l));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// One logged change of basis `x -> x + lambda x'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisChange {
    pub target: String,
    pub added: String,
    pub coefficient: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeKind {
    /// In the ideal `(U_B)`: `U_B^power W_{B,0}^w`.
    Bottom,
    /// In the ideal `(V_T)`: `V_T^power W_{T,0}^w`.
    Top,
}

/// Edge between consecutive path generators `k` and `k+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardEdge {
    pub kind: EdgeKind,
    /// The differential runs from generator `k` to `k+1`.
    pub forward: bool,
    pub power: i64,
    pub w: i64,
}

/// A path of generators whose edges alternate between the two ideals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardComplex {
    pub generators: Vec<Generator>,
    pub edges: Vec<StandardEdge>,
    /// Changes of basis applied by the second pass, in order.
    pub moves: Vec<BasisChange>,
}

impl StandardComplex {
    /// Signed `(i, j)` vector of each top edge along the path. A forward
    /// edge `V_T^j W^i` gives `+(i, j)`; a backward edge `V_T^i W^j` gives
    /// `-(i, j)`.
    pub fn vectors(&self) -> Vec<(i64, (i64, i64))> {
        self.edges
            .iter()
            .filter(|e| e.kind == EdgeKind::Top)
            .map(|e| {
                if e.forward {
                    (1, (e.w, e.power))
                } else {
                    (-1, (e.power, e.w))
                }
            })
            .collect()
    }

    pub fn alternates(&self) -> bool {
        self.edges.windows(2).all(|p| p[0].kind != p[1].kind)
    }
}

/// Filtered change of basis `y -> y + U^d y'` over `F[U, V]`, if any.
fn filtered_power(y: &Generator, yp: &Generator) -> Option<i64> {
    let dm = yp.maslov - y.maslov;
    if dm % 2 != 0 {
        return None;
    }
    let d = dm / 2;
    (yp.i - d <= y.i && yp.j - d <= y.j).then_some(d)
}

/// Boolean differential with `U`-powers implied by Maslov gradings.
fn bool_change(rows: &[BTreeSet<usize>], y: usize, yp: usize) -> Vec<BTreeSet<usize>> {
    let mut out = rows.to_vec();
    let add: Vec<usize> = rows[yp].iter().copied().collect();
    for t in add {
        if !out[y].remove(&t) {
            out[y].insert(t);
        }
    }
    for row in &mut out {
        if row.contains(&y) && !row.remove(&yp) {
            row.insert(yp);
        }
    }
    out
}

const PLATEAU_STEPS: usize = 400;

fn to_complex(gens: &[Generator], rows: &[BTreeSet<usize>]) -> Result<BifilteredComplex, PhiError> {
    let edges: Vec<(usize, usize, i64)> = rows
        .iter()
        .enumerate()
        .flat_map(|(x, r)| {
            r.iter()
                .map(move |&t| (x, t, (gens[t].maslov - gens[x].maslov + 1) / 2))
        })
        .collect();
    Ok(BifilteredComplex::new(gens.to_vec(), edges)?)
}

fn has_acyclic_part(gens: &[Generator], rows: &[BTreeSet<usize>]) -> Result<bool, PhiError> {
    let c = to_complex(gens, rows)?;
    let comps = components(&c);
    if comps.len() < 2 {
        return Ok(false);
    }
    for comp in comps {
        if c.restricted(&comp)?.homology_rank().0 == 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

fn count(rows: &[BTreeSet<usize>]) -> usize {
    rows.iter().map(BTreeSet::len).sum()
}

/// First pass: filtered simplification over `F[U, V]`, dropping acyclic
/// components until none remain.
pub fn simplify_filtered(c: &BifilteredComplex) -> Result<BifilteredComplex, PhiError> {
    let mut cur = c.reduce();
    loop {
        let gens = cur.generators().to_vec();
        let n = gens.len();
        let mut rows: Vec<BTreeSet<usize>> = (0..n)
            .map(|x| cur.targets(x).iter().copied().collect())
            .collect();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|y| (0..n).map(move |yp| (y, yp)))
            .filter(|&(y, yp)| y != yp && filtered_power(&gens[y], &gens[yp]).is_some())
            .collect();
        // strict descent, then moves along plateaus to unseen states until an
        // acyclic component can be split off
        let mut seen: HashSet<Vec<BTreeSet<usize>>> = HashSet::new();
        let mut flat = 0;
        while !has_acyclic_part(&gens, &rows)? {
            seen.insert(rows.clone());
            let base = count(&rows);
            let moves: Vec<(usize, Vec<BTreeSet<usize>>)> = pairs
                .iter()
                .map(|&(y, yp)| bool_change(&rows, y, yp))
                .map(|r| (count(&r), r))
                .filter(|(c, r)| *c <= base && !seen.contains(r))
                .collect();
            let Some(best) = moves.into_iter().min_by_key(|t| t.0) else {
                break;
            };
            flat = if best.0 < base { 0 } else { flat + 1 };
            if flat > PLATEAU_STEPS {
                break;
            }
            rows = best.1;
        }
        let next = to_complex(&gens, &rows)?;
        let mut keep = Vec::new();
        for comp in components(&next) {
            let part = next.restricted(&comp)?;
            if part.homology_rank().0 > 0 {
                keep.extend(comp);
            }
        }
        keep.sort_unstable();
        let next = next.restricted(&keep)?.reduce();
        if next.len() == cur.len() && next.edge_count() == cur.edge_count() {
            return Ok(next);
        }
        cur = next;
    }
}

fn components(c: &BifilteredComplex) -> Vec<Vec<usize>> {
    let n = c.len();
    let mut adj = vec![Vec::new(); n];
    for (x, y, _) in c.edges() {
        adj[x].push(y);
        adj[y].push(x);
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut comp = Vec::new();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Brings a reduced cone of a staircase, or an already standard complex,
/// to standard form.
pub fn to_standard(c: &BifilteredComplex) -> Result<StandardComplex, PhiError> {
    let c = simplify_filtered(c)?;
    let n = c.len();
    let mut m = XMatrix {
        rows: vec![BTreeMap::new(); n],
    };
    for (x, y, _) in c.edges() {
        let (di, dj) = c.delta(x, y);
        let e: Entry = [Mono::bottom(di, dj), Mono::top(dj, di)]
            .into_iter()
            .flatten()
            .collect();
        m.rows[x].insert(y, e);
    }
    let mut moves = Vec::new();
    loop {
        let best = m
            .candidates()
            .into_iter()
            .map(|(x, xp, l)| {
                let cells = m.change(x, xp, l);
                (m.cost(&cells), x, xp, l, cells)
            })
            .filter(|t| t.0 < 0)
            .min_by_key(|t| (t.0, t.1, t.2, t.3));
        let Some((_, x, xp, l, cells)) = best else {
            break;
        };
        m.apply(cells);
        moves.push(BasisChange {
            target: c.generator(x).name.clone(),
            added: c.generator(xp).name.clone(),
            coefficient: l.to_string(),
        });
    }
    read_path(&c, &m, moves)
}

fn read_path(
    c: &BifilteredComplex,
    m: &XMatrix,
    moves: Vec<BasisChange>,
) -> Result<StandardComplex, PhiError> {
    let n = c.len();
    let fail = |why: String| Err(PhiError::NotSimplifiable(why));
    let mut adj: Vec<Vec<(usize, bool, Mono)>> = vec![Vec::new(); n];
    for (x, r) in m.rows.iter().enumerate() {
        for (&t, e) in r {
            if e.len() != 1 {
                return fail(format!(
                    "{} -> {} has {} terms",
                    c.generator(x).name,
                    c.generator(t).name,
                    e.len()
                ));
            }
            let p = *e.iter().next().expect("one term");
            if p == Mono::One {
                return fail("unit coefficient left".into());
            }
            adj[x].push((t, true, p));
            adj[t].push((x, false, p));
        }
    }
    if n == 0 {
        return fail("empty complex".into());
    }
    if adj.iter().any(|a| a.len() > 2) || m.terms() + 1 != n {
        return fail("differential is not a single path".into());
    }
    let ends: Vec<usize> = (0..n).filter(|&v| adj[v].len() <= 1).collect();
    let start = ends
        .iter()
        .copied()
        .find(|&v| adj[v].first().is_some_and(|e| !e.2.is_top()))
        .unwrap_or(ends[0]);
    let mut order = vec![start];
    let mut edges = Vec::new();
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&(next, out, p)) = adj[cur].iter().find(|e| e.0 != prev) {
        let (kind, power, w) = match p {
            Mono::B(a, b) => (EdgeKind::Bottom, a, b),
            Mono::T(a, b) => (EdgeKind::Top, a, b),
            Mono::One => unreachable!("rejected above"),
        };
        edges.push(StandardEdge {
            kind,
            forward: out,
            power,
            w,
        });
        prev = cur;
        cur = next;
        order.push(cur);
    }
    if order.len() != n {
        return fail("differential is not connected".into());
    }
    let s = StandardComplex {
        generators: order.iter().map(|&v| c.generator(v).clone()).collect(),
        edges,
        moves,
    };
    if !s.alternates() {
        return fail("edges do not alternate between the two ideals".into());
    }
    Ok(s)
}

/// Finitely supported table `(i, j) -> phi_{i,j}`. The `(1, 0)` entry is
/// always present; equality ignores zero entries.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(into = "Vec<PhiEntry>", from = "Vec<PhiEntry>")]
pub struct PhiTable {
    entries: BTreeMap<(i64, i64), i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiEntry {
    pub i: i64,
    pub j: i64,
    pub value: i64,
}

impl From<PhiTable> for Vec<PhiEntry> {
    fn from(t: PhiTable) -> Self {
        t.entries
            .into_iter()
            .map(|((i, j), value)| PhiEntry { i, j, value })
            .collect()
    }
}

impl From<Vec<PhiEntry>> for PhiTable {
    fn from(v: Vec<PhiEntry>) -> Self {
        let mut t = PhiTable::new();
        for e in v {
            t.add(e.i, e.j, e.value);
        }
        t
    }
}

impl PartialEq for PhiTable {
    fn eq(&self, o: &Self) -> bool {
        self.nonzero().eq(o.nonzero())
    }
}

impl Eq for PhiTable {}

impl PhiTable {
    pub fn new() -> Self {
        let mut entries = BTreeMap::new();
        entries.insert((1, 0), 0);
        PhiTable { entries }
    }

    pub fn add(&mut self, i: i64, j: i64, v: i64) {
        *self.entries.entry((i, j)).or_insert(0) += v;
    }

    pub fn get(&self, i: i64, j: i64) -> i64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = ((i64, i64), i64)> + '_ {
        self.entries
            .iter()
            .filter(|(_, v)| **v != 0)
            .map(|(k, v)| (*k, *v))
    }

    /// Keys carried by the table, including explicit zeros.
    pub fn keys(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.entries.keys().copied()
    }

    /// `{"(i,j)": value}` over the carried keys.
    pub fn to_keyed_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .entries
            .iter()
            .map(|((i, j), v)| (format!("({i},{j})"), (*v).into()))
            .collect();
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for PhiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|((i, j), v)| format!("({i},{j}):{v}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn phi_of_standard(s: &StandardComplex) -> PhiTable {
    let mut t = PhiTable::new();
    for (sign, (i, j)) in s.vectors() {
        t.add(i, j, sign);
    }
    t
}

/// `Delta_{k,m}(s)`.
pub fn delta_km(k: i64, m: i64, s: i64) -> (i64, i64) {
    if s <= 2 * k {
        let ceil = (s - 1).div_euclid(2) + (s - 1).rem_euclid(2);
        (k - ceil, m + k - (s + 1).div_euclid(2))
    } else {
        (0, 2 * k + m - s)
    }
}

/// Closed form for the cone on `T(2, 4k+1)`. The `(1, 0)` entry sums the
/// number of `a`-generators over `1 <= s <= m-1`.
pub fn phi_closed_form(k: i64, m: i64) -> Result<PhiTable, PhiError> {
    if k < 1 || m < 2 {
        return Err(PhiError::InvalidParameter(format!(
            "need k >= 1 and m >= 2, got k={k}, m={m}"
        )));
    }
    let mut t = PhiTable::new();
    for s in 1..m {
        t.add(1, 0, -(i_top(k, s) - i_bottom(k, m, s) + 1));
        let (i, j) = delta_km(k, m, s);
        t.add(i, j, 1);
    }
    Ok(t)
}

/// Rank over the rationals of the tables as rows over their joint support.
pub fn independence_rank(tables: &[PhiTable]) -> usize {
    let support: BTreeSet<(i64, i64)> = tables
        .iter()
        .flat_map(|t| t.nonzero().map(|(k, _)| k))
        .collect();
    let mut rows: Vec<Vec<Ratio<i64>>> = tables
        .iter()
        .map(|t| {
            support
                .iter()
                .map(|&(i, j)| Ratio::from_integer(t.get(i, j)))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..support.len() {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = Ratio::one() / rows[rank][col];
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col] * inv;
                let pivot = rows[rank].clone();
                for (cell, p) in rows[r].iter_mut().zip(&pivot).skip(col) {
                    *cell -= *p * f;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// One row of the `(k, m)` grid comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridRow {
    pub k: i64,
    pub m: i64,
    pub pipeline: PhiTable,
    pub closed_form: PhiTable,
}

/// CSV with columns `k,m,i,j,pipeline,closed_form` over the union of keys.
pub fn grid_csv(rows: &[GridRow]) -> Result<String, PhiError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| PhiError::Csv(e.to_string());
    w.write_record(["k", "m", "i", "j", "pipeline", "closed_form"])
        .map_err(csv_err)?;
    for r in rows {
        let keys: BTreeSet<(i64, i64)> = r.pipeline.keys().chain(r.closed_form.keys()).collect();
        for (i, j) in keys {
            w.serialize((
                r.k,
                r.m,
                i,
                j,
                r.pipeline.get(i, j),
                r.closed_form.get(i, j),
            ))
            .map_err(csv_err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| PhiError::Csv(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_products_vanish() {
        assert_eq!(Mono::B(1, 0).checked_mul(Mono::T(1, 0)), None);
        assert_eq!(
            Mono::B(-1, 1).checked_mul(Mono::B(1, 0)),
            Some(Mono::B(0, 1))
        );
        assert_eq!(Mono::B(1, 0).checked_div(Mono::B(2, 0)), None);
        assert_eq!(
            Mono::B(0, 1).checked_div(Mono::B(1, 0)),
            Some(Mono::B(-1, 1))
        );
    }

    #[test]
    fn closed_form_examples() {
        let t = phi_closed_form(1, 2).unwrap();
        assert_eq!(t.get(1, 0), 0);
        assert_eq!(t.get(1, 2), 1);
        assert_eq!(t.nonzero().count(), 1);
        let t = phi_closed_form(1, 3).unwrap();
        assert_eq!(t.get(1, 0), -2);
        assert_eq!(t.get(1, 3), 1);
        assert_eq!(t.get(0, 3), 1);
    }

    #[test]
    fn json_shape() {
        let t = phi_closed_form(1, 2).unwrap();
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(
            v,
            serde_json::json!([{"i":1,"j":0,"value":0},{"i":1,"j":2,"value":1}])
        );
        let back: PhiTable = serde_json::from_value(v).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn rank_trivia() {
        let t = phi_closed_form(2, 3).unwrap();
        assert_eq!(independence_rank(std::slice::from_ref(&t)), 1);
        assert_eq!(independence_rank(&[t.clone(), t]), 1);
    }
}
