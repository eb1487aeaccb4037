//! Marked bases from the diagram engine against the closed-form counts.
//!
//! For `[-2(n-k), 0, -2k]` with `1 <= k <= n-1`, one extra negative full
//! twist of the middle term adds `m(n,k,l)` boxes on the `2l`-th generator.
//! A positive twist, or `k` outside `1..=n-1`, does not split off boxes.

use hfk_core::complex::{marking_count, MarkVariant};
use hfk_core::diagram::{compute_markings, DiagramError};
use hfk_core::{Sign, Tangle};

fn family(n: i64, k: i64) -> Tangle {
    Tangle::new(vec![-2 * (n - k), 0, -2 * k], Sign::Plus).unwrap()
}

#[test]
fn negative_twist_matches_counts_inside_range() {
    for n in 2..=5 {
        for k in 1..n {
            let marks = compute_markings(&family(n, k), Sign::Minus).unwrap();
            for l in 1..n {
                let want = marking_count(MarkVariant::M, n, k, l).unwrap();
                let got = marks
                    .of(Sign::Minus)
                    .get(&format!("x{}", 2 * l))
                    .copied()
                    .unwrap_or(0);
                assert_eq!(got, want, "n={n} k={k} l={l}");
            }
            let total: u64 = (1..n)
                .map(|l| marking_count(MarkVariant::M, n, k, l).unwrap())
                .sum();
            assert_eq!(marks.total(Sign::Minus), total);
            assert_eq!(marks.total(Sign::Plus), 0);
        }
    }
}

#[test]
fn three_one_example() {
    let marks = compute_markings(&family(3, 1), Sign::Minus).unwrap();
    let got: Vec<_> = marks
        .of(Sign::Minus)
        .iter()
        .map(|(g, c)| (g.clone(), *c))
        .collect();
    assert_eq!(got, vec![("x2".to_string(), 1), ("x4".to_string(), 1)]);
}

#[test]
fn positive_twist_does_not_split() {
    for n in 2..=4 {
        for k in 1..n {
            assert!(matches!(
                compute_markings(&family(n, k), Sign::Plus),
                Err(DiagramError::NotBoxSplit(_))
            ));
        }
    }
}

#[test]
fn outside_range_does_not_split() {
    for n in 2..=4 {
        for k in [-1, n + 1] {
            for twist in [Sign::Plus, Sign::Minus] {
                assert!(
                    matches!(
                        compute_markings(&family(n, k), twist),
                        Err(DiagramError::NotBoxSplit(_))
                    ),
                    "n={n} k={k}"
                );
            }
        }
    }
}

#[test]
fn rejects_large_middle_term() {
    let t = Tangle::new(vec![2, 2, 2], Sign::Plus).unwrap();
    assert_eq!(
        compute_markings(&t, Sign::Plus),
        Err(DiagramError::UnsupportedMiddleTerm(2))
    );
}

#[test]
#[ignore = "boxes only split off for 1 <= k <= n-1 with a negative twist"]
fn totals_over_full_range() {
    for n in 2..=6 {
        for k in -4..=n + 4 {
            if k == 0 || k == n {
                continue;
            }
            let total: u64 = (1..n)
                .map(|l| marking_count(MarkVariant::M, n, k, l).unwrap())
                .sum();
            let marks = compute_markings(&family(n, k), Sign::Plus).unwrap();
            assert_eq!(marks.total(Sign::Plus), total, "n={n} k={k}");
        }
    }
}
