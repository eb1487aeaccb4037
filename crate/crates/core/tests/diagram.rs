//! Diagram engine: generators, bigons and the complexes they give.

use hfk_core::complex::{isomorphic, model, ModelKind};
use hfk_core::diagram::{build_diagram, enumerate, knot_complex, svg};
use hfk_core::{Sign, Tangle};

fn t(s: &str) -> Tangle {
    s.parse().unwrap()
}

#[test]
fn unknot_has_one_generator_and_no_bigons() {
    let (gens, bigons) = enumerate(&build_diagram(&t("+:0")).unwrap()).unwrap();
    assert_eq!(gens.len(), 1);
    assert!(bigons.is_empty());
}

#[test]
fn minus_four_bigons() {
    let (gens, bigons) = enumerate(&build_diagram(&t("+:-4")).unwrap()).unwrap();
    assert_eq!(gens.len(), 3);
    let mut got: Vec<_> = bigons
        .iter()
        .map(|b| (b.from, b.to, b.z_count, b.w_count))
        .collect();
    got.sort_unstable();
    assert_eq!(got, vec![(0, 1, 1, 0), (2, 1, 0, 1)]);
}

#[test]
fn minus_2n_generator_count() {
    for n in 1..=8 {
        let d = build_diagram(&Tangle::new(vec![-2 * n], Sign::Plus).unwrap()).unwrap();
        assert_eq!(d.generators.len() as i64, 2 * n - 1);
    }
}

#[test]
fn two_one_two_is_the_trefoil_staircase() {
    let c = knot_complex(&t("+:2,1,2")).unwrap();
    assert_eq!(c.len(), 3);
    assert!(isomorphic(&c, &model(ModelKind::C(1)).unwrap()).is_some());
}

#[test]
fn bigons_carry_basepoints() {
    for s in ["+:-6", "+:6", "+:2,1,4", "-:2,1,4", "+:4,-1,-6", "-:-2,0,4"] {
        let (_, bigons) = enumerate(&build_diagram(&t(s)).unwrap()).unwrap();
        for b in bigons {
            assert!(b.z_count + b.w_count >= 1, "{s}: empty bigon {b:?}");
        }
    }
}

#[test]
fn construction_is_deterministic() {
    let a = knot_complex(&t("+:4,1,-6")).unwrap();
    let b = knot_complex(&t("+:4,1,-6")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn mirror_presentation_gives_dual_complex() {
    for s in ["+:2,1,4", "-:4,1,-2", "+:-6"] {
        let tg = t(s);
        let c = knot_complex(&tg).unwrap();
        let m = knot_complex(&tg.mirror()).unwrap();
        assert!(isomorphic(&c.dual(), &m).is_some(), "{s}");
    }
}

#[test]
fn svg_has_curve_and_labels() {
    let d = build_diagram(&t("+:-4")).unwrap();
    let s = svg::render(&d, 1);
    assert!(s.starts_with("<svg"));
    assert!(s.contains("<polyline"));
    for k in 1..=3 {
        assert!(s.contains(&format!(">x{k}<")));
    }
}
