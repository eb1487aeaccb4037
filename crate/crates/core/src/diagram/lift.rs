//! Pull-tight, the lift to the universal cover, bigon enumeration and
//! gradings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::curve::{turning, Crossing, Curve, Edge, Hex};
use super::{Conventions, DiagramError};
use crate::complex::{BifilteredComplex, Generator};
use crate::tangle::Sign;

/// Horizontal coordinates are in quarter units: the `z` column of cell `c`
/// is at `4c + 1`, the `w` column at `4c + 3`.
fn piece_low(hex: Hex, col: i64) -> i64 {
    match hex {
        Hex::L => 4 * col + 1,
        Hex::R => 4 * col + 3,
    }
}

/// Position in the cover of one crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Place {
    /// Alpha crossing on line `line`, inside the piece starting at `low`.
    Alpha { low: i64, line: i64 },
    /// Column crossing at column `x` in row `row`.
    Column { x: i64, row: i64 },
}

struct Walk {
    places: Vec<Place>,
    shift: (i64, i64),
    /// Cumulative heading (quarter turns) at each crossing.
    theta: Vec<i64>,
}

/// Walks one period starting in cell `(0, 0)`.
fn walk(curve: &Curve) -> Walk {
    let n = curve.len();
    let mut hex = curve.seq[0].hex_before();
    let (mut col, mut row) = (0i64, 0i64);
    let mut places = Vec::with_capacity(n);
    let mut theta = Vec::with_capacity(n);
    let mut th = curve.seq[0].heading();
    for t in 0..n {
        let c = curve.seq[t];
        if t > 0 {
            th += turning(curve.seq[t - 1], c);
        }
        theta.push(th);
        let place = match c.edge {
            Edge::AL | Edge::AR => {
                let line = if c.dir > 0 { row + 1 } else { row };
                row += c.dir as i64;
                Place::Alpha {
                    low: piece_low(hex, col),
                    line,
                }
            }
            Edge::ZL | Edge::ZH => {
                if c.dir > 0 {
                    col += 1;
                    Place::Column {
                        x: 4 * col + 1,
                        row,
                    }
                } else {
                    let p = Place::Column {
                        x: 4 * col + 1,
                        row,
                    };
                    col -= 1;
                    p
                }
            }
            Edge::WL | Edge::WH => Place::Column {
                x: 4 * col + 3,
                row,
            },
        };
        places.push(place);
        hex = c.hex_after();
    }
    let closing = turning(curve.seq[n - 1], curve.seq[0]);
    debug_assert_eq!(th + closing - curve.seq[0].heading(), 0);
    Walk {
        places,
        shift: (col, row),
        theta,
    }
}

/// Removes basepoint-free bigons between the curve and alpha until none is
/// left.
pub(crate) fn pull_tight(curve: &mut Curve) {
    curve.free_reduce();
    while let Some(next) = find_removable(curve) {
        *curve = next;
        curve.free_reduce();
    }
}

fn find_removable(curve: &Curve) -> Option<Curve> {
    let n = curve.len();
    let alphas: Vec<usize> = (0..n).filter(|&t| curve.seq[t].edge.is_alpha()).collect();
    if alphas.len() < 2 {
        return None;
    }
    let ranks = curve.ranks();
    for (k, &t1) in alphas.iter().enumerate() {
        let t2 = alphas[(k + 1) % alphas.len()];
        let (c1, c2) = (curve.seq[t1], curve.seq[t2]);
        if c1.dir == c2.dir {
            continue;
        }
        // walk from t1 to t2 locally
        let rotated: Vec<Crossing> = (0..n).map(|s| curve.seq[(t1 + s) % n]).collect();
        let j = (t2 + n - t1) % n;
        let mut hex = c1.hex_after();
        let mut col = 0i64;
        let mut cols: BTreeMap<i64, Vec<Edge>> = BTreeMap::new();
        for c in &rotated[1..j] {
            match c.edge {
                Edge::ZL | Edge::ZH => {
                    if c.dir > 0 {
                        col += 1;
                        cols.entry(4 * col + 1).or_default().push(c.edge);
                    } else {
                        cols.entry(4 * col + 1).or_default().push(c.edge);
                        col -= 1;
                    }
                }
                Edge::WL | Edge::WH => cols.entry(4 * col + 3).or_default().push(c.edge),
                _ => unreachable!(),
            }
            hex = c.hex_after();
        }
        let k1 = (piece_low(c1.hex_before(), 0), ranks[t1]);
        let k2 = (piece_low(hex, col), ranks[t2]);
        let (lo, hi) = if k1 < k2 { (k1, k2) } else { (k2, k1) };
        // innermost: no alpha crossing strictly between on the line
        let blocked = alphas.iter().any(|&s| {
            let base = piece_low(curve.seq[s].edge_hex(), 0);
            let r = ranks[s];
            let c_lo = (lo.0 - base).div_euclid(4) - 1;
            let c_hi = (hi.0 - base).div_euclid(4) + 1;
            (c_lo..=c_hi).any(|c| {
                let key = (base + 4 * c, r);
                key > lo && key < hi
            })
        });
        if blocked {
            continue;
        }
        // the arc lies above the line when it starts upward; the ray from a
        // puncture to the line then meets the lower half-columns
        let above = c1.dir > 0;
        let between = |x: i64| x > lo.0 && x < hi.0 + 2 && x >= lo.0 + 2 && x <= hi.0;
        let mut xs: Vec<i64> = cols.keys().copied().collect();
        let first = lo.0 + 2;
        let mut x = first;
        while x <= hi.0 {
            xs.push(x);
            x += 2;
        }
        xs.sort_unstable();
        xs.dedup();
        let has_puncture = xs.iter().any(|&x| {
            let hits = cols
                .get(&x)
                .map(|v| v.iter().filter(|e| e.is_high() != above).count())
                .unwrap_or(0);
            (hits + between(x) as usize) % 2 == 1
        });
        if has_puncture {
            continue;
        }
        let mut repl = Vec::new();
        let mut between_cols: Vec<i64> = (0..)
            .map(|s| first + 2 * s)
            .take_while(|&x| x <= hi.0)
            .collect();
        let dir: i8 = if k2 > k1 { 1 } else { -1 };
        if dir < 0 {
            between_cols.reverse();
        }
        for x in between_cols {
            let is_z = x.rem_euclid(4) == 1;
            let edge = match (is_z, above) {
                (true, true) => Edge::ZH,
                (true, false) => Edge::ZL,
                (false, true) => Edge::WH,
                (false, false) => Edge::WL,
            };
            repl.push(Crossing { edge, dir });
        }
        repl.extend_from_slice(&rotated[j + 1..]);
        if repl.is_empty() {
            return None;
        }
        return Some(Curve::new(repl));
    }
    None
}

impl Crossing {
    /// The hexagon containing an alpha piece.
    fn edge_hex(self) -> Hex {
        match self.edge {
            Edge::AL => Hex::L,
            Edge::AR => Hex::R,
            _ => panic!("not an alpha crossing"),
        }
    }
}

/// An intersection of the distinguished alpha lift with the beta lift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedGenerator {
    pub name: String,
    /// Parameter along the beta lift (`period * len + index`).
    pub param: i64,
    /// Position along alpha in quarter units plus rank inside the piece.
    pub key: (i64, usize),
    /// `1` when beta crosses upward.
    pub dir: i8,
    pub theta: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bigon {
    pub from: usize,
    pub to: usize,
    pub z_count: u64,
    pub w_count: u64,
}

/// A tightened diagram with its lift data.
#[derive(Debug, Clone)]
pub struct LiftedDiagram {
    pub curve: Curve,
    pub sign: Sign,
    pub conventions: Conventions,
    pub generators: Vec<LiftedGenerator>,
    ranks: Vec<usize>,
    places: Vec<Place>,
    theta: Vec<i64>,
    shift: (i64, i64),
}

/// Lifted crossing with its column data, for winding computations.
#[derive(Debug, Clone, Copy)]
struct ColumnHit {
    x: i64,
    row: i64,
    high: bool,
    dir: i8,
}

impl LiftedDiagram {
    pub(crate) fn new(
        curve: Curve,
        sign: Sign,
        conventions: Conventions,
    ) -> Result<Self, DiagramError> {
        let w = walk(&curve);
        if w.shift.1 == 0 {
            return Err(DiagramError::NonTransverse(
                "beta is parallel to alpha".into(),
            ));
        }
        let ranks = curve.ranks();
        let n = curve.len() as i64;
        let (dc, dr) = w.shift;
        let mut gens = Vec::new();
        for (t, place) in w.places.iter().enumerate() {
            if let Place::Alpha { low, line } = *place {
                if line % dr != 0 {
                    return Err(DiagramError::NonTransverse(format!(
                        "period shift {dr} does not divide line {line}"
                    )));
                }
                let p = -line / dr;
                gens.push(LiftedGenerator {
                    name: String::new(),
                    param: p * n + t as i64,
                    key: (low + 4 * p * dc, ranks[t]),
                    dir: curve.seq[t].dir,
                    theta: w.theta[t],
                });
            }
        }
        gens.sort_by_key(|g| g.key);
        for (k, g) in gens.iter_mut().enumerate() {
            g.name = format!("x{}", k + 1);
        }
        Ok(LiftedDiagram {
            curve,
            sign,
            conventions,
            generators: gens,
            ranks,
            places: w.places,
            theta: w.theta,
            shift: w.shift,
        })
    }

    pub fn period(&self) -> (i64, i64) {
        self.shift
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Column crossings of the beta lift with parameter strictly between
    /// `from` and `to`.
    fn column_hits(&self, from: i64, to: i64) -> Vec<ColumnHit> {
        let n = self.curve.len() as i64;
        let (dc, dr) = self.shift;
        ((from + 1)..to)
            .filter_map(|s| {
                let p = s.div_euclid(n);
                let t = s.rem_euclid(n) as usize;
                match self.places[t] {
                    Place::Column { x, row } => Some(ColumnHit {
                        x: x + 4 * p * dc,
                        row: row + p * dr,
                        high: self.curve.seq[t].edge.is_high(),
                        dir: self.curve.seq[t].dir,
                    }),
                    Place::Alpha { .. } => None,
                }
            })
            .collect()
    }

    fn lifted_theta(&self, param: i64) -> i64 {
        let n = self.curve.len() as i64;
        self.theta[param.rem_euclid(n) as usize]
    }

    /// Windings at all punctures of the loop `beta(u -> v) + alpha(v -> u)`,
    /// where `u` precedes `v` along beta. Keyed by `(column, row)`.
    fn punct_windings(
        &self,
        u: &LiftedGenerator,
        v: &LiftedGenerator,
    ) -> BTreeMap<(i64, i64), i64> {
        let hits = self.column_hits(u.param, v.param);
        let mut by_col: BTreeMap<i64, Vec<ColumnHit>> = BTreeMap::new();
        let (mut rmin, mut rmax) = (-1i64, 0i64);
        for h in hits {
            rmin = rmin.min(h.row - 1);
            rmax = rmax.max(h.row);
            by_col.entry(h.x).or_default().push(h);
        }
        let (lo, hi) = if u.key < v.key {
            (u.key.0, v.key.0)
        } else {
            (v.key.0, u.key.0)
        };
        let alpha_sign = if u.key < v.key { 1 } else { -1 };
        let mut cols: Vec<i64> = by_col.keys().copied().collect();
        let mut x = lo + 2;
        while x <= hi {
            cols.push(x);
            x += 2;
        }
        cols.sort_unstable();
        cols.dedup();
        let mut out = BTreeMap::new();
        for x in cols {
            let inside_alpha = x > lo && x <= hi && x >= lo + 2;
            let empty = Vec::new();
            let list = by_col.get(&x).unwrap_or(&empty);
            for r in rmin..=rmax {
                let mut wnd = 0;
                for h in list {
                    if h.row > r || (h.row == r && h.high) {
                        wnd -= h.dir as i64;
                    }
                }
                if r < 0 && inside_alpha {
                    wnd += alpha_sign;
                }
                if wnd != 0 {
                    out.insert((x, r), wnd);
                }
            }
        }
        out
    }

    /// All embedded bigons, with basepoint counts.
    pub fn bigons(&self) -> Result<Vec<Bigon>, DiagramError> {
        let f = self.conventions.orientation as i64;
        let g = &self.generators;
        let mut order: Vec<usize> = (0..g.len()).collect();
        order.sort_by_key(|&k| g[k].param);
        let mut out = Vec::new();
        for ia in 0..order.len() {
            for ib in ia + 1..order.len() {
                let (a, b) = (&g[order[ia]], &g[order[ib]]);
                let interior: Vec<&LiftedGenerator> =
                    order[ia + 1..ib].iter().map(|&k| &g[k]).collect();
                let (lo, hi) = if a.key < b.key {
                    (a.key, b.key)
                } else {
                    (b.key, a.key)
                };
                if interior.iter().any(|c| c.key > lo && c.key < hi) {
                    continue;
                }
                let ab = a.key < b.key;
                // corner at a: point next to a towards b, on the side beta leaves into
                let mut wa = 0i64;
                for c in &interior {
                    let right = if ab { c.key > a.key } else { c.key >= a.key };
                    if right {
                        wa += c.dir as i64;
                    }
                }
                if !ab {
                    wa += a.dir as i64;
                }
                if ab && a.dir != b.dir {
                    wa += if a.dir > 0 { -1 } else { 1 };
                }
                // corner at b: side beta arrives from
                let mut wb = 0i64;
                for c in &interior {
                    let right = if ab { c.key >= b.key } else { c.key > b.key };
                    if right {
                        wb += c.dir as i64;
                    }
                }
                if ab {
                    wb += b.dir as i64;
                }
                if !ab && a.dir != b.dir {
                    wb += if b.dir < 0 { 1 } else { -1 };
                }
                if wa == 0 || wb == 0 {
                    continue;
                }
                if wa != wb || wa.abs() != 1 {
                    return Err(DiagramError::NonTransverse(format!(
                        "corner windings {wa} and {wb} between {} and {}",
                        a.name, b.name
                    )));
                }
                let o = wa;
                let wind = self.punct_windings(a, b);
                let (mut nz, mut nw) = (0u64, 0u64);
                for (&(x, _), &v) in &wind {
                    if v != o {
                        return Err(DiagramError::NonTransverse(format!(
                            "bigon between {} and {} is not embedded",
                            a.name, b.name
                        )));
                    }
                    if x.rem_euclid(4) == 1 {
                        nz += 1;
                    } else {
                        nw += 1;
                    }
                }
                let (from, to) = if o * f > 0 {
                    (order[ib], order[ia])
                } else {
                    (order[ia], order[ib])
                };
                out.push(Bigon {
                    from,
                    to,
                    z_count: nz,
                    w_count: nw,
                });
            }
        }
        out.sort_by_key(|b| (b.from, b.to));
        Ok(out)
    }

    /// `(maslov, alexander)` of each generator relative to the first.
    pub fn gradings(&self) -> Vec<(i64, i64)> {
        let f = self.conventions.orientation as i64;
        let g = &self.generators;
        let Some(g0) = g.first() else {
            return Vec::new();
        };
        g.iter()
            .map(|x| {
                if x.param == g0.param {
                    return (0, 0);
                }
                let (wind, sgn) = if g0.param < x.param {
                    (self.punct_windings(g0, x), 1)
                } else {
                    (self.punct_windings(x, g0), -1)
                };
                let (mut nz, mut nw) = (0i64, 0i64);
                for (&(col, _), &v) in &wind {
                    if col.rem_euclid(4) == 1 {
                        nz += f * sgn * v;
                    } else {
                        nw += f * sgn * v;
                    }
                }
                let dth = self.lifted_theta(x.param) - self.lifted_theta(g0.param);
                debug_assert!(dth % 2 == 0);
                let mu = f * dth / 2;
                // M(x) - M(g0) = mu - 2 n_w, A(x) - A(g0) = n_z - n_w
                (mu - 2 * nw, nz - nw)
            })
            .collect()
    }

    /// The complex generated by the intersections with the bigon
    /// differential, with normalized gradings.
    pub fn complex(&self) -> Result<BifilteredComplex, DiagramError> {
        let raw = self.raw_complex()?;
        Ok(raw.normalized()?)
    }

    /// The complex with gradings relative to `x1`.
    pub fn raw_complex(&self) -> Result<BifilteredComplex, DiagramError> {
        let grades = self.gradings();
        let bigons = self.bigons()?;
        from_bigons(&self.generators, &grades, &bigons)
    }
}

/// Assembles the complex: each bigon from `x` to `y` with `c` z's and `d` w's
/// contributes `U^d y` to the differential of `x`.
pub fn from_bigons(
    gens: &[LiftedGenerator],
    grades: &[(i64, i64)],
    bigons: &[Bigon],
) -> Result<BifilteredComplex, DiagramError> {
    let generators = gens
        .iter()
        .zip(grades)
        .map(|(g, &(m, a))| Generator::new(g.name.clone(), m, 0, a))
        .collect();
    let edges = bigons.iter().map(|b| (b.from, b.to, b.w_count as i64));
    Ok(BifilteredComplex::new(generators, edges)?)
}
