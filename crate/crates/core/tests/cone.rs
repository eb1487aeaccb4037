//! Surgery cone: construction, filtrations, truncation and the reduced model.

use hfk_core::complex::{isomorphic, model, BifilteredComplex, ModelKind};
use hfk_core::cone::{
    build_cone, cone_name, f_ms, reduced_cone_model, reduced_cone_model_window, truncate, Column,
    ConeError, MappingCone,
};

fn staircase(n: i64) -> BifilteredComplex {
    model(ModelKind::C(n)).unwrap()
}

fn names(cone: &MappingCone, col: Column, s: i64) -> Vec<String> {
    cone.input
        .generators()
        .iter()
        .map(|g| cone_name(col, s, &g.name))
        .collect()
}

fn edge(c: &BifilteredComplex, from: &str, to: &str) -> Option<i64> {
    let (x, y) = (c.index_of(from)?, c.index_of(to)?);
    c.targets(x).contains(&y).then(|| c.u_power(x, y))
}

#[test]
fn vertical_map_is_identity() {
    let cone = build_cone(&staircase(1), 2).unwrap();
    let flat = cone.flatten().unwrap();
    for s in cone.a_range() {
        for g in cone.input.generators() {
            let a = cone_name(Column::A, s, &g.name);
            let b = cone_name(Column::B, s, &g.name);
            assert_eq!(edge(&flat, &a, &b), Some(0), "{a}");
        }
    }
}

#[test]
fn horizontal_map_reflects_and_shifts() {
    // On C(1) the reflection fixes the middle generator, so h_0 sends it to
    // itself in B_{-1} with U-power n + s = 0.
    let c = staircase(1);
    let cone = build_cone(&c, 1).unwrap();
    let flat = cone.flatten().unwrap();
    let mid = c
        .generators()
        .iter()
        .find(|g| g.i == g.j)
        .expect("staircase has a diagonal generator");
    let a = cone_name(Column::A, 0, &mid.name);
    let b = cone_name(Column::B, -1, &mid.name);
    assert_eq!(edge(&flat, &a, &b), Some(0));
}

#[test]
fn column_filtrations() {
    let cone = build_cone(&staircase(2), 3).unwrap();
    for g in cone.input.generators() {
        for s in cone.b_range() {
            let (mb, ib, jb) = cone.filtration(Column::B, s, g);
            assert_eq!(ib, g.i);
            assert_eq!(jb, g.i - 3 - 3 * s + 6);
            assert_eq!(mb, g.maslov - s * (s + 1) - 1);
        }
        for s in cone.a_range() {
            let (_, ia, ja) = cone.filtration(Column::A, s, g);
            assert_eq!(ia, g.i.max(g.j - s));
            assert_eq!(ja, (g.i - 3).max(g.j - s) - 3 * s + 6);
        }
    }
}

#[test]
fn flattened_cone_matches_reduced_model() {
    for (k, m) in [(1, 2), (1, 3), (2, 2)] {
        let red = build_cone(&staircase(2 * k), m)
            .unwrap()
            .flatten()
            .unwrap()
            .reduce();
        let want = reduced_cone_model(k, m).unwrap();
        assert!(isomorphic(&red, &want).is_some(), "k={k} m={m}");
    }
}

#[test]
fn beta_sits_at_f_of_next_column() {
    let (k, m) = (2, 3);
    let c = reduced_cone_model(k, m).unwrap();
    for s in (-(2 * k + m - 1) + m - 1)..=(2 * k + m - 1) {
        let x = c
            .index_of(&cone_name(Column::B, s, &format!("b{}", 2 * k + 1)))
            .unwrap();
        let g = c.generator(x);
        assert_eq!((g.i, g.j), (0, f_ms(m, s + 1)));
    }
}

#[test]
fn truncation_to_full_window_is_identity() {
    let cone = build_cone(&staircase(2), 2).unwrap();
    let (same, steps) = truncate(&cone, cone.ell).unwrap();
    assert!(steps.is_empty());
    assert_eq!(same.flatten().unwrap(), cone.flatten().unwrap());
}

#[test]
fn truncation_steps_hold_and_preserve_homology() {
    for (k, m) in [(1, 2), (1, 3), (2, 2)] {
        let cone = build_cone(&staircase(2 * k), m).unwrap();
        let full = cone.flatten().unwrap().homology_rank().0;
        let (small, steps) = truncate(&cone, m - 1).unwrap();
        assert_eq!(steps.len() as i64, 2 * k);
        for st in &steps {
            assert!(st.holds(), "k={k} m={m} step {st:?}");
            assert_eq!(st.j_shifts, (st.ell, st.ell - m));
        }
        let flat = small.flatten().unwrap();
        assert_eq!(flat.homology_rank().0, full);
        let want = reduced_cone_model_window(k, m, m - 1).unwrap();
        assert!(isomorphic(&flat.reduce(), &want).is_some(), "k={k} m={m}");
    }
}

#[test]
fn maps_outside_window_are_quasi_isomorphisms() {
    // Past the window edge, v_s at the top and h_s at the bottom identify
    // the two columns up to filtered homotopy, so their cone is contractible.
    let mut cone = build_cone(&staircase(1), 2).unwrap();
    cone.ell += 2;
    let flat = cone.flatten().unwrap();
    let pick = |parts: [(Column, i64); 2]| {
        let keep: Vec<usize> = parts
            .iter()
            .flat_map(|&(col, s)| names(&cone, col, s))
            .map(|n| flat.index_of(&n).unwrap())
            .collect();
        flat.restricted(&keep).unwrap().reduce()
    };
    let top = cone.ell;
    let bottom = -cone.ell + cone.m;
    assert!(pick([(Column::A, top), (Column::B, top)]).is_empty());
    assert!(pick([(Column::A, bottom), (Column::B, bottom - 1)]).is_empty());
}

#[test]
fn window_errors() {
    let cone = build_cone(&staircase(1), 3).unwrap();
    assert_eq!(
        truncate(&cone, 1).unwrap_err(),
        ConeError::WindowViolation {
            ell: 1,
            lo: 2,
            hi: 3
        }
    );
    assert!(matches!(
        truncate(&cone, 4),
        Err(ConeError::WindowViolation { .. })
    ));
    assert!(matches!(
        reduced_cone_model_window(1, 2, 0),
        Err(ConeError::WindowViolation { .. })
    ));
    assert!(matches!(
        reduced_cone_model(0, 2),
        Err(ConeError::InvalidParameter(_))
    ));
    assert_eq!(
        build_cone(&staircase(1), -1).unwrap_err(),
        ConeError::InvalidM(-1)
    );
}

#[test]
fn asymmetric_input_is_rejected() {
    let c = staircase(1).shifted(0, 1, 0);
    assert_eq!(build_cone(&c, 2).unwrap_err(), ConeError::NotSymmetric);
}
