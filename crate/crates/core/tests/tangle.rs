//! Continued fractions and equivalent presentations.

use hfk_core::tangle::{
    equivalent_presentations, eval_cf, normalize_cf, same_closure, TangleError,
};
use hfk_core::{Sign, Tangle};
use num_rational::Ratio;

#[test]
fn normal_forms() {
    assert_eq!(normalize_cf(2i64, 1).unwrap(), vec![2]);
    assert_eq!(normalize_cf(8i64, 5).unwrap().len() % 2, 1);
    for (p, q) in [(8i64, 3), (-8, 3), (12, 5), (4, 7), (10, -3)] {
        let cf = normalize_cf(p, q).unwrap();
        assert_eq!(eval_cf(&cf).unwrap(), Ratio::new(p, q), "{p}/{q}");
    }
}

#[test]
fn construction_checks() {
    assert!(matches!(
        Tangle::new(vec![2, 1], Sign::Plus),
        Err(TangleError::Invalid(_))
    ));
    assert!(matches!(
        Tangle::new(vec![1, 1, 2], Sign::Plus),
        Err(TangleError::Invalid(_))
    ));
    assert!(matches!(
        "2,1,2".parse::<Tangle>(),
        Err(TangleError::Parse(_))
    ));
    assert!(matches!(
        "*:2".parse::<Tangle>(),
        Err(TangleError::Parse(_))
    ));
    assert_eq!("-1:4".parse::<Tangle>().unwrap().sign(), Sign::Minus);
}

#[test]
fn mirror_negates() {
    let t: Tangle = "+:2,1,-4".parse().unwrap();
    let m = t.mirror();
    assert_eq!(m.to_string(), "-:-2,-1,4");
    assert_eq!(m.value(), -t.value());
    assert_eq!(m.mirror(), t);
}

#[test]
fn presentations_share_a_closure() {
    for s in ["+:2,1,4", "-:4,-1,2", "+:2,1,-6", "+:0,1,4"] {
        let t: Tangle = s.parse().unwrap();
        let all = equivalent_presentations(&t).unwrap();
        assert!(all.iter().any(|p| p.tangle == t && !p.mirror));
        for p in &all {
            let v = if p.mirror {
                -p.tangle.value()
            } else {
                p.tangle.value()
            };
            assert!(same_closure(&v, &t.value()), "{s} -> {}", p.tangle);
            assert_eq!(p.tangle.sign() == t.sign(), !p.mirror);
        }
    }
}

#[test]
fn rewriting_the_middle_term() {
    let t: Tangle = "+:2,1,2".parse().unwrap();
    let all = equivalent_presentations(&t).unwrap();
    assert!(all
        .iter()
        .any(|p| p.tangle.terms() == [4, -1, 4] && !p.mirror));
    let long = Tangle::new(vec![2, 1, 2, 1, 2], Sign::Plus).unwrap();
    assert_eq!(
        equivalent_presentations(&long),
        Err(TangleError::UnsupportedLength(5))
    );
}
