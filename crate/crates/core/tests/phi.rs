//! Phi invariants: standard complexes, the closed form and independence.

use hfk_core::complex::{model, ModelKind};
use hfk_core::cone::{build_cone, reduced_cone_model, reduced_cone_model_window};
use hfk_core::phi::{
    delta_km, grid_csv, independence_rank, phi_closed_form, phi_of_standard, to_standard, EdgeKind,
    GridRow, PhiError, PhiTable,
};

fn phi_model(k: i64, m: i64) -> PhiTable {
    phi_of_standard(&to_standard(&reduced_cone_model(k, m).unwrap()).unwrap())
}

#[test]
fn smallest_case_vectors() {
    let s = to_standard(&reduced_cone_model(1, 2).unwrap()).unwrap();
    assert!(s.vectors().contains(&(1, (1, 2))));
    let t = phi_of_standard(&s);
    assert_eq!(t.get(1, 2), 1);
    assert_eq!(t, phi_closed_form(1, 2).unwrap());
}

#[test]
fn standard_paths_alternate() {
    for k in 1..=3 {
        for m in 2..=5 {
            let s = to_standard(&reduced_cone_model(k, m).unwrap()).unwrap();
            assert!(s.alternates(), "k={k} m={m}");
            assert_eq!(s.edges.len() + 1, s.generators.len());
            assert!(s.edges.iter().all(|e| e.power >= 0 && e.w >= 0));
            let tops = s.edges.iter().filter(|e| e.kind == EdgeKind::Top).count();
            assert_eq!(tops, s.vectors().len());
        }
    }
}

#[test]
fn pipeline_matches_closed_form() {
    for (k, m) in [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3)] {
        let red = build_cone(&model(ModelKind::C(2 * k)).unwrap(), m)
            .unwrap()
            .flatten()
            .unwrap()
            .reduce();
        let t = phi_of_standard(&to_standard(&red).unwrap());
        assert_eq!(t, phi_closed_form(k, m).unwrap(), "k={k} m={m}");
    }
}

#[test]
fn delta_walks_down_one_diagonal_at_a_time() {
    for k in 1..=5 {
        for m in 2..=8 {
            for s in 1..m {
                let (i, j) = delta_km(k, m, s);
                assert_eq!(i + j, 2 * k + m - s);
                assert!((0..=k).contains(&i));
                let (i2, j2) = delta_km(k, m, s + 1);
                assert!(i2 <= i && j2 <= j);
            }
        }
    }
}

#[test]
fn closed_form_leading_entry_and_support() {
    for k in 1..=4 {
        for m in 2..=6 {
            let t = phi_closed_form(k, m).unwrap();
            assert_eq!(t.get(k, m + k - 1), 1, "k={k} m={m}");
            for ((i, j), _) in t.nonzero() {
                assert!(i <= k && j < m + k, "k={k} m={m} ({i},{j})");
                assert!(i + j > 2 * k || (i, j) == (1, 0));
            }
        }
    }
}

#[test]
fn closed_forms_are_independent() {
    for kk in 1..=4 {
        for mm in 2..=4 {
            let tables: Vec<PhiTable> = (1..=kk)
                .flat_map(|k| (2..=mm).map(move |m| phi_closed_form(k, m).unwrap()))
                .collect();
            assert_eq!(independence_rank(&tables) as i64, kk * (mm - 1));
        }
    }
}

#[test]
fn rank_of_dependent_rows() {
    let a = phi_closed_form(1, 2).unwrap();
    let b = phi_closed_form(2, 3).unwrap();
    let mut c = PhiTable::new();
    for ((i, j), v) in a.nonzero().chain(b.nonzero()) {
        c.add(i, j, v);
    }
    assert_eq!(independence_rank(&[a.clone(), b.clone()]), 2);
    assert_eq!(independence_rank(&[a, b, c]), 2);
}

#[test]
fn unknot_cone_is_the_k_zero_staircase() {
    // Only the `s > 2k` branch of Delta survives: one top edge `(0, m - s)`
    // per `1 <= s <= m-1` and no `a`-generators.
    for m in 1..=4 {
        let red = build_cone(&model(ModelKind::C0).unwrap(), m)
            .unwrap()
            .flatten()
            .unwrap()
            .reduce();
        let t = phi_of_standard(&to_standard(&red).unwrap());
        let mut want = PhiTable::new();
        for s in 1..m {
            let (i, j) = delta_km(0, m, s);
            want.add(i, j, 1);
        }
        assert_eq!(t, want, "m={m}");
        assert!(t.nonzero().all(|((i, _), _)| i == 0));
    }
}

#[test]
fn truncated_window_gives_same_phi() {
    for (k, m) in [(1, 2), (1, 3), (2, 2), (2, 3)] {
        let small = reduced_cone_model_window(k, m, m - 1).unwrap();
        let t = phi_of_standard(&to_standard(&small).unwrap());
        assert_eq!(t, phi_model(k, m), "k={k} m={m}");
    }
}

#[test]
fn invalid_parameters() {
    assert!(matches!(
        phi_closed_form(0, 2),
        Err(PhiError::InvalidParameter(_))
    ));
    assert!(matches!(
        phi_closed_form(1, 1),
        Err(PhiError::InvalidParameter(_))
    ));
}

#[test]
fn table_serialization() {
    let t = phi_closed_form(2, 3).unwrap();
    let json = serde_json::to_string(&t).unwrap();
    let back: PhiTable = serde_json::from_str(&json).unwrap();
    assert_eq!(back, t);
    let keyed = phi_closed_form(1, 2).unwrap().to_keyed_json();
    assert_eq!(keyed, serde_json::json!({"(1,0)": 0, "(1,2)": 1}));
}

#[test]
fn grid_csv_layout() {
    let t = phi_closed_form(1, 2).unwrap();
    let rows = [GridRow {
        k: 1,
        m: 2,
        pipeline: t.clone(),
        closed_form: t,
    }];
    let csv = grid_csv(&rows).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines,
        ["k,m,i,j,pipeline,closed_form", "1,2,1,0,0,0", "1,2,1,2,1,1"]
    );
}
