//! Simple closed curves on the twice-punctured torus as cyclic crossing
//! sequences with a hexagonal cell structure.
//!
//! The torus `[0,1)^2` carries `alpha` at `y = 0`, `z` at `(1/4, 1/2)` and `w`
//! at `(3/4, 1/2)`. Cutting along `alpha` and the vertical lines through `z`
//! and `w` leaves two hexagons per cell: `L = [1/4, 3/4] x [0, 1]` and
//! `R = [3/4, 5/4] x [0, 1]`. Their sides are the alpha pieces `AL`, `AR` and
//! the half-columns below and above each basepoint (`ZL`, `ZH`, `WL`, `WH`).
//! A curve is recorded by the sides it crosses, in order.

use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Edge {
    AL,
    AR,
    ZL,
    ZH,
    WL,
    WH,
}

impl Edge {
    pub const ALL: [Edge; 6] = [Edge::AL, Edge::AR, Edge::ZL, Edge::ZH, Edge::WL, Edge::WH];

    pub fn is_alpha(self) -> bool {
        matches!(self, Edge::AL | Edge::AR)
    }

    pub fn is_z(self) -> bool {
        matches!(self, Edge::ZL | Edge::ZH)
    }

    pub fn is_w(self) -> bool {
        matches!(self, Edge::WL | Edge::WH)
    }

    pub fn is_high(self) -> bool {
        matches!(self, Edge::ZH | Edge::WH)
    }

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hex {
    L,
    R,
}

/// Crossing of an edge. For alpha pieces `dir = 1` is upward; for column
/// pieces `dir = 1` is rightward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub edge: Edge,
    pub dir: i8,
}

pub const fn cr(edge: Edge, dir: i8) -> Crossing {
    Crossing { edge, dir }
}

impl Crossing {
    pub fn inverse(self) -> Crossing {
        Crossing {
            edge: self.edge,
            dir: -self.dir,
        }
    }

    pub fn hex_before(self) -> Hex {
        match (self.edge, self.dir > 0) {
            (Edge::AL, _) => Hex::L,
            (Edge::AR, _) => Hex::R,
            (Edge::ZL | Edge::ZH, true) => Hex::R,
            (Edge::ZL | Edge::ZH, false) => Hex::L,
            (Edge::WL | Edge::WH, true) => Hex::L,
            (Edge::WL | Edge::WH, false) => Hex::R,
        }
    }

    pub fn hex_after(self) -> Hex {
        self.inverse().hex_before()
    }

    /// Heading in quarter turns: 0 right, 1 up, 2 left, 3 down.
    pub fn heading(self) -> i64 {
        match (self.edge.is_alpha(), self.dir > 0) {
            (true, true) => 1,
            (true, false) => 3,
            (false, true) => 0,
            (false, false) => 2,
        }
    }
}

/// Counter-clockwise side index of the crossing as seen from `hex`.
/// `exiting` tells whether the curve leaves `hex` through it.
pub fn side_of(hex: Hex, c: Crossing, exiting: bool) -> usize {
    match (hex, c.edge) {
        (Hex::L, Edge::AL) | (Hex::R, Edge::AR) => {
            if (c.dir > 0) == exiting {
                3
            } else {
                0
            }
        }
        (Hex::L, Edge::WL) | (Hex::R, Edge::ZL) => 1,
        (Hex::L, Edge::WH) | (Hex::R, Edge::ZH) => 2,
        (Hex::L, Edge::ZH) | (Hex::R, Edge::WH) => 4,
        (Hex::L, Edge::ZL) | (Hex::R, Edge::WL) => 5,
        _ => panic!("crossing {c:?} is not a side of {hex:?}"),
    }
}

/// Turning, in quarter turns, of the arc inside one hexagon.
pub fn turning(enter: Crossing, exit: Crossing) -> i64 {
    let d = (exit.heading() - enter.heading()).rem_euclid(4);
    match d {
        0 => 0,
        1 => 1,
        3 => -1,
        _ => {
            use Edge::*;
            let hex = enter.hex_after();
            match (hex, enter.edge, enter.dir > 0) {
                (Hex::L, ZL, true) | (Hex::L, WH, false) => 2,
                (Hex::L, ZH, true) | (Hex::L, WL, false) => -2,
                (Hex::R, ZH, false) | (Hex::R, WL, true) => 2,
                (Hex::R, ZL, false) | (Hex::R, WH, true) => -2,
                _ => panic!("unexpected u-turn {enter:?} -> {exit:?}"),
            }
        }
    }
}

/// A cyclic crossing sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub seq: Vec<Crossing>,
}

impl Curve {
    pub fn new(seq: Vec<Crossing>) -> Self {
        let c = Curve { seq };
        c.assert_valid();
        c
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn at(&self, t: usize) -> Crossing {
        self.seq[t % self.seq.len()]
    }

    fn assert_valid(&self) {
        let n = self.seq.len();
        for t in 0..n {
            assert_eq!(
                self.seq[t].hex_after(),
                self.seq[(t + 1) % n].hex_before(),
                "broken curve at {t}"
            );
        }
    }

    /// Cancels adjacent back-and-forth crossings, cyclically.
    pub fn free_reduce(&mut self) {
        let mut out: Vec<Crossing> = Vec::with_capacity(self.seq.len());
        for &c in &self.seq {
            if out.last() == Some(&c.inverse()) {
                out.pop();
            } else {
                out.push(c);
            }
        }
        while out.len() >= 2 && out[0] == out[out.len() - 1].inverse() {
            out.pop();
            out.remove(0);
        }
        self.seq = out;
    }

    /// Replaces every crossing by a word.
    pub fn substitute(&mut self, f: impl Fn(Crossing) -> Vec<Crossing>) {
        self.seq = self.seq.iter().flat_map(|&c| f(c)).collect();
        self.free_reduce();
        self.assert_valid();
    }

    /// Inserts `word(enter, exit)` into the arc of every visit to `L`.
    pub fn insert_in_l(&mut self, word: impl Fn(Crossing, Crossing) -> Vec<Crossing>) {
        let n = self.seq.len();
        let mut out = Vec::with_capacity(n * 2);
        for t in 0..n {
            let c = self.seq[t];
            out.push(c);
            let next = self.seq[(t + 1) % n];
            if c.hex_after() == Hex::L {
                out.extend(word(c, next));
            }
        }
        self.seq = out;
        self.free_reduce();
        self.assert_valid();
    }

    /// Order of two crossings of the same edge along its canonical direction
    /// (left to right for alpha pieces, bottom to top for column pieces).
    pub fn compare_on_edge(&self, a: usize, b: usize) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        let n = self.seq.len();
        let e = self.seq[a].edge;
        debug_assert_eq!(e, self.seq[b].edge);
        let plus = cr(e, 1).hex_after();
        let mut hex = plus;
        let mut side = side_of(plus, cr(e, 1), false);
        let reversed = !e.is_alpha();
        let (mut ta, mut tb) = (a, b);
        let fa = self.seq[a].dir > 0;
        let fb = self.seq[b].dir > 0;
        let step = |t: usize, fwd: bool| if fwd { (t + 1) % n } else { (t + n - 1) % n };
        for _ in 0..2 * n + 2 {
            let (na, nb) = (step(ta, fa), step(tb, fb));
            let sa = side_of(hex, self.seq[na], fa);
            let sb = side_of(hex, self.seq[nb], fb);
            if sa != sb {
                let da = (sa + 6 - side) % 6;
                let db = (sb + 6 - side) % 6;
                let ord = if da < db {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
                return if reversed { ord.reverse() } else { ord };
            }
            let c = self.seq[na];
            hex = if fa { c.hex_after() } else { c.hex_before() };
            side = side_of(hex, c, !fa);
            ta = na;
            tb = nb;
            if fa != fb {
                // strands travelling in opposite directions along the same
                // edges would have to coincide
                debug_assert!(ta != tb);
            }
        }
        panic!("strands {a} and {b} never separate");
    }

    /// Rank of each crossing among the crossings of its edge.
    pub fn ranks(&self) -> Vec<usize> {
        let mut by_edge: Vec<Vec<usize>> = vec![Vec::new(); 6];
        for (t, c) in self.seq.iter().enumerate() {
            by_edge[c.edge.index()].push(t);
        }
        let mut rank = vec![0; self.seq.len()];
        for list in &mut by_edge {
            list.sort_by(|&a, &b| self.compare_on_edge(a, b));
            for (k, &t) in list.iter().enumerate() {
                rank[t] = k;
            }
        }
        rank
    }

    pub fn edge_count(&self, e: Edge) -> usize {
        self.seq.iter().filter(|c| c.edge == e).count()
    }

    pub fn alpha_count(&self) -> usize {
        self.seq.iter().filter(|c| c.edge.is_alpha()).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_curve_is_valid() {
        let c = Curve::new(vec![cr(Edge::AL, -1), cr(Edge::WH, 1), cr(Edge::ZL, 1)]);
        assert_eq!(c.alpha_count(), 1);
        assert_eq!(c.ranks(), vec![0, 0, 0]);
    }

    #[test]
    fn free_reduction_is_cyclic() {
        let mut c = Curve {
            seq: vec![
                cr(Edge::AL, 1),
                cr(Edge::AL, -1),
                cr(Edge::AL, -1),
                cr(Edge::WH, 1),
                cr(Edge::ZL, 1),
                cr(Edge::ZL, -1),
                cr(Edge::ZL, 1),
            ],
        };
        c.free_reduce();
        assert_eq!(
            c.seq,
            vec![cr(Edge::AL, -1), cr(Edge::WH, 1), cr(Edge::ZL, 1)]
        );
    }

    #[test]
    fn parallel_strands_are_ordered() {
        // two parallel copies cannot form one curve, so use a curve of
        // slope -1/2 which crosses AL twice per period
        let c = Curve::new(vec![
            cr(Edge::AL, -1),
            cr(Edge::WH, 1),
            cr(Edge::ZH, 1),
            cr(Edge::WL, 1),
            cr(Edge::ZL, 1),
        ]);
        let r = c.ranks();
        assert_eq!(r.len(), 5);
    }
}
