//! SVG rendering of a lifted diagram.

use std::fmt::Write;

use super::curve::{Crossing, Edge, Hex};
use super::LiftedDiagram;

const SCALE: f64 = 80.0;

/// Point of a crossing inside cell `(col, row)`, spread by rank.
fn point(c: Crossing, rank: usize, count: usize, hex: Hex, col: i64, row: i64) -> (f64, f64) {
    let f = (rank as f64 + 1.0) / (count as f64 + 1.0);
    let (x, y) = match c.edge {
        Edge::AL => (0.25 + 0.5 * f, 0.0),
        Edge::AR => (0.75 + 0.5 * f, 0.0),
        Edge::ZL => (0.25, 0.5 * f),
        Edge::ZH => (0.25, 0.5 + 0.5 * f),
        Edge::WL => (0.75, 0.5 * f),
        Edge::WH => (0.75, 0.5 + 0.5 * f),
    };
    let _ = hex;
    (col as f64 + x, row as f64 + y)
}

/// Renders `periods` periods of the beta lift around the distinguished alpha
/// lift, with basepoints and generator labels.
pub fn render(d: &LiftedDiagram, periods: i64) -> String {
    let curve = &d.curve;
    let n = curve.len();
    let counts: Vec<usize> = Edge::ALL.iter().map(|&e| curve.edge_count(e)).collect();
    let count_of = |e: Edge| counts[Edge::ALL.iter().position(|&x| x == e).unwrap()];
    let ranks = d.ranks();
    let (dc, dr) = d.period();
    let mut pts = Vec::new();
    let mut hex = curve.seq[0].hex_before();
    let (mut col, mut row) = (0i64, 0i64);
    for _ in -periods..periods {
        for (&c, &rank) in curve.seq.iter().zip(ranks.iter()).take(n) {
            let (mut pc, mut pr) = (col, row);
            match c.edge {
                Edge::AL | Edge::AR => {
                    if c.dir > 0 {
                        pr += 1;
                    }
                    row += c.dir as i64;
                }
                Edge::ZL | Edge::ZH => {
                    if c.dir > 0 {
                        col += 1;
                        pc = col;
                    } else {
                        col -= 1;
                    }
                }
                _ => {}
            }
            pts.push(point(c, rank, count_of(c.edge), hex, pc, pr));
            hex = c.hex_after();
        }
    }
    let shift_x = -(dc as f64) * periods as f64;
    let shift_y = -(dr as f64) * periods as f64;
    let pts: Vec<(f64, f64)> = pts
        .iter()
        .map(|(x, y)| (x + shift_x, y + shift_y))
        .collect();
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &pts {
        xmin = xmin.min(x);
        xmax = xmax.max(x);
        ymin = ymin.min(y);
        ymax = ymax.max(y);
    }
    let (xmin, xmax) = (xmin.floor() - 1.0, xmax.ceil() + 1.0);
    let (ymin, ymax) = (ymin.floor() - 1.0, ymax.ceil() + 1.0);
    let tx = |x: f64| (x - xmin) * SCALE;
    let ty = |y: f64| (ymax - y) * SCALE;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}">"#,
        (xmax - xmin) * SCALE,
        (ymax - ymin) * SCALE
    );
    let mut y = ymin;
    while y <= ymax {
        let w = if y == 0.0 { 2.0 } else { 0.5 };
        let _ = writeln!(
            s,
            r#"<line x1="0" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="red" stroke-width="{w}"/>"#,
            ty(y),
            tx(xmax),
            ty(y)
        );
        y += 1.0;
    }
    let mut c = xmin;
    while c <= xmax {
        let mut r = ymin;
        while r < ymax {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.1}" cy="{:.1}" r="4" fill="black"/><circle cx="{:.1}" cy="{:.1}" r="4" fill="white" stroke="black"/>"#,
                tx(c + 0.25),
                ty(r + 0.5),
                tx(c + 0.75),
                ty(r + 0.5)
            );
            r += 1.0;
        }
        c += 1.0;
    }
    let path: Vec<String> = pts
        .iter()
        .map(|&(x, y)| format!("{:.1},{:.1}", tx(x), ty(y)))
        .collect();
    let _ = writeln!(
        s,
        r#"<polyline points="{}" fill="none" stroke="blue" stroke-width="1.5"/>"#,
        path.join(" ")
    );
    for g in &d.generators {
        let x = g.key.0 as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-size="10">{}</text>"#,
            tx(x + 0.1),
            ty(-0.15),
            g.name
        );
    }
    s.push_str("</svg>\n");
    s
}
