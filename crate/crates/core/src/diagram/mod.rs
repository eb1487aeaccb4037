//! Genus-one doubly pointed diagrams of blown-down two-bridge presentations,
//! built by twisting a slope-one curve and read off in the universal cover.

mod curve;
mod lift;
mod markings;
pub mod svg;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use curve::{cr, Crossing, Curve, Edge, Hex};
pub use lift::{Bigon, LiftedDiagram, LiftedGenerator};
pub use markings::compute_markings;

use crate::complex::ComplexError;
use crate::tangle::{Sign, Tangle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("curve is not transverse to alpha: {0}")]
    NonTransverse(String),
    #[error("middle term {0} is outside -1..=1")]
    UnsupportedMiddleTerm(i64),
    #[error("presentation must have odd length with even odd-position terms")]
    InvalidWord,
    #[error("twisted complex does not split off boxes: {0}")]
    NotBoxSplit(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Orientation and placement conventions. The defaults are pinned by the
/// unknot, the length-one family and the `[2,1,2]` examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    /// The slope `-1` start curve passes above `w` and below `z` (otherwise
    /// the reverse); the slope `+1` curve is its reflection across alpha.
    pub start_above_w: bool,
    /// Positive vertical twists move fingers upward along the `z` column.
    pub push_up: bool,
    /// Positive horizontal twists turn clockwise.
    pub sigma_clockwise: bool,
    /// Sign relating the winding of a boundary loop to domain multiplicity.
    pub orientation: i8,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            start_above_w: true,
            push_up: true,
            sigma_clockwise: true,
            orientation: -1,
        }
    }
}

impl Conventions {
    /// All sixteen combinations, for calibration.
    pub fn all() -> Vec<Conventions> {
        let mut out = Vec::new();
        for bits in 0..16u8 {
            out.push(Conventions {
                start_above_w: bits & 1 == 0,
                push_up: bits & 2 == 0,
                sigma_clockwise: bits & 4 == 0,
                orientation: if bits & 8 == 0 { 1 } else { -1 },
            });
        }
        out
    }
}

fn start_curve(sign: Sign, conv: &Conventions) -> Curve {
    use Edge::*;
    let seq = match (sign, conv.start_above_w) {
        // slope -1
        (Sign::Plus, true) => vec![cr(AL, -1), cr(WH, 1), cr(ZL, 1)],
        (Sign::Plus, false) => vec![cr(AR, -1), cr(ZH, 1), cr(WL, 1)],
        // slope +1, the reflection of the above across alpha
        (Sign::Minus, true) => vec![cr(WL, 1), cr(ZH, 1), cr(AL, 1)],
        (Sign::Minus, false) => vec![cr(WH, 1), cr(AR, 1), cr(ZL, 1)],
    };
    Curve::new(seq)
}

/// One finger move along every lift of the `z` column.
fn push(curve: &mut Curve, up: bool) {
    use Edge::*;
    curve.substitute(|c| {
        if !c.edge.is_z() {
            return vec![c];
        }
        let s: i8 = if up { 1 } else { -1 };
        if c.dir > 0 {
            vec![cr(AR, s), c, cr(AL, -s)]
        } else {
            vec![cr(AL, s), c, cr(AR, -s)]
        }
    });
}

fn enters_low(c: Crossing) -> bool {
    matches!(
        (c.edge, c.dir > 0),
        (Edge::AL, true) | (Edge::ZL, true) | (Edge::WL, false)
    )
}

fn exits_low(c: Crossing) -> bool {
    enters_low(c.inverse())
}

/// One half twist about the segment joining `z` to `w`, followed by the
/// relabelling that keeps `z` on the left.
fn half_twist(curve: &mut Curve, clockwise: bool) {
    use Edge::*;
    let up: Vec<Crossing> = if clockwise {
        vec![cr(ZL, -1), cr(ZH, 1), cr(WL, 1), cr(WH, -1)]
    } else {
        vec![cr(WL, 1), cr(WH, -1), cr(ZL, -1), cr(ZH, 1)]
    };
    let down: Vec<Crossing> = up.iter().rev().map(|c| c.inverse()).collect();
    curve.insert_in_l(|enter, exit| match (enters_low(enter), exits_low(exit)) {
        (true, false) => up.clone(),
        (false, true) => down.clone(),
        _ => Vec::new(),
    });
}

/// The twisted curve before tightening.
pub fn twisted_curve(t: &Tangle, conv: &Conventions) -> Curve {
    let mut curve = start_curve(t.sign(), conv);
    for (k, &a) in t.terms().iter().enumerate() {
        if k % 2 == 0 {
            for _ in 0..(a.abs() / 2) {
                push(&mut curve, (a > 0) == conv.push_up);
            }
        } else {
            for _ in 0..a.abs() {
                half_twist(&mut curve, (a > 0) == conv.sigma_clockwise);
            }
        }
    }
    curve
}

/// Builds and tightens the diagram of `t`.
pub fn build_diagram(t: &Tangle) -> Result<LiftedDiagram, DiagramError> {
    build_diagram_with(t, &Conventions::default())
}

pub fn build_diagram_with(t: &Tangle, conv: &Conventions) -> Result<LiftedDiagram, DiagramError> {
    let mut curve = twisted_curve(t, conv);
    lift::pull_tight(&mut curve);
    LiftedDiagram::new(curve, t.sign(), *conv)
}

/// Generators on the distinguished alpha lift and all embedded bigons.
pub fn enumerate(d: &LiftedDiagram) -> Result<(Vec<LiftedGenerator>, Vec<Bigon>), DiagramError> {
    Ok((d.generators.clone(), d.bigons()?))
}

/// The reduced knot complex of `K^sign(terms)`.
pub fn knot_complex(t: &Tangle) -> Result<crate::BifilteredComplex, DiagramError> {
    Ok(build_diagram(t)?.complex()?.reduce())
}
