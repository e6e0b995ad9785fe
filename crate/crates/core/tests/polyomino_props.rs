use std::collections::HashSet;

use proptest::prelude::*;
use sepack::construction::{c_formula, csep_formula};
use sepack::polyomino::{basic_polyomino, count_fixed, decompose, enumerate_fixed, Polyomino, StripSide};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// `⌊2n − 2√n⌋` in floating point; exact over the tested range.
fn float_max_edges(n: i64) -> i64 {
    (2.0 * n as f64 - 2.0 * (n as f64).sqrt()).floor() as i64
}

/// Polyomino grown by attaching each new cell to a random earlier one.
fn grown_polyomino() -> impl Strategy<Value = Polyomino> {
    prop::collection::vec((any::<prop::sample::Index>(), 0usize..4), 0..60).prop_map(|steps| {
        let mut cells = vec![(0i32, 0i32)];
        let mut seen: HashSet<(i32, i32)> = cells.iter().copied().collect();
        for (pick, dir) in steps {
            let (i, j) = cells[pick.index(cells.len())];
            let next = [(i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)][dir];
            if seen.insert(next) {
                cells.push(next);
            }
        }
        Polyomino::new(cells).unwrap()
    })
}

#[test]
fn perimeter_and_edges_account_for_every_side() {
    for n in 1..=9 {
        for p in enumerate_fixed(n).unwrap() {
            assert_eq!(p.perimeter() + 2 * p.edge_count(), 4 * n);
        }
    }
}

#[test]
fn basic_polyomino_attains_the_edge_maximum() {
    for n in 1..=10_000i64 {
        let sides: &[StripSide] = if n <= 2000 {
            &[StripSide::RightVertical, StripSide::TopHorizontal]
        } else {
            &[StripSide::RightVertical]
        };
        for &side in sides {
            let p = basic_polyomino(n, side).unwrap();
            assert_eq!(p.len() as i64, n);
            assert_eq!(p.edge_count() as i64, float_max_edges(n), "n={n}");
        }
    }
}

#[test]
fn decomposition_reconstructs_every_n() {
    for n in 1..=1_000_000i64 {
        let d = decompose(n).unwrap();
        assert!(d.eps <= 1);
        assert!(d.k < d.ell + d.eps, "n={n}: {d:?}");
        assert_eq!(d.ell * (d.ell + d.eps) + d.k, n as u64);
    }
}

#[test]
fn enumeration_has_no_duplicates() {
    for n in 1..=10 {
        let all = enumerate_fixed(n).unwrap();
        assert_eq!(all.len() as u64, count_fixed(n).unwrap());
        let distinct: HashSet<Vec<(i32, i32)>> = all.iter().map(|p| p.canonical().cells().to_vec()).collect();
        assert_eq!(distinct.len(), all.len(), "n={n}");
    }
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn grown_polyominoes_balance_sides(p in grown_polyomino()) {
        prop_assert_eq!(p.perimeter() + 2 * p.edge_count(), 4 * p.len());
        prop_assert!(p.edge_count() as i64 <= float_max_edges(p.len() as i64));
    }

    #[test]
    fn separable_count_is_below_twice_n(n in 1i64..1_000_000_000) {
        let c = csep_formula(n).unwrap();
        prop_assert!(c < 2 * n);
        prop_assert!(c <= c_formula(n).unwrap());
    }
}
