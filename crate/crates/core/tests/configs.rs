//! Exhaustive configuration scans at q = 3 and q = 4 against the closed forms.

use std::collections::BTreeMap;

use cubic_census::classify::CurveGeometry;
use cubic_census::closed_forms::Registry;
use cubic_census::configs::{collinear_dual_counts, ConfigClass, ConfigScanner};
use cubic_census::engine::Budget;
use num_bigint::BigInt;

fn formula(id: &str, q: u64) -> BigInt {
    Registry::global().eval_count(id, q).unwrap()
}

#[test]
fn config_families_match_closed_forms() {
    for q in [3u64, 4] {
        let g = CurveGeometry::for_q(q).unwrap();
        let rows = ConfigScanner::new(&g).family_counts(&Budget::DEFAULT).unwrap();
        for row in &rows {
            assert!(row.matches, "q={q} {}: scan {} formula {:?}", row.id, row.brute_force, row.formula);
        }
        let get = |id: &str| rows.iter().find(|r| r.id == id).unwrap().brute_force;
        assert_eq!(get("J8"), 9 * get("I9"), "q={q}");
    }
}

#[test]
fn nine_point_sets_at_q4() {
    let g = CurveGeometry::for_q(4).unwrap();
    let nine = ConfigScanner::new(&g).count_i9(&Budget::DEFAULT).unwrap();
    assert_eq!(nine.count, 1400);
    assert_eq!(nine.independent_eights_without_pencil, 0);
    assert_eq!(nine.pencil_with_dependent_eight, 0);
}

/// Full-support codewords per set of each tag, by failing configuration.
fn words_per_set(tag: ConfigClass, d: u32, q: u64) -> u64 {
    let f = |m: usize| collinear_dual_counts_closed(d, m as u32, q);
    match (d, tag) {
        (_, ConfigClass::Collinear(m)) => f(m),
        (2, ConfigClass::ConicSmooth(6)) => q - 1,
        (2, ConfigClass::TwoLines { first: 3, second: 3, through_intersection: false }) => q - 1,
        (3, ConfigClass::ConicSmooth(8)) => q - 1,
        (3, ConfigClass::ConicSmooth(9)) => q * q - 1 - 9 * (q - 1),
        (3, ConfigClass::TwoLines { first: 4, second: 4, through_intersection: false }) => q - 1,
        (3, ConfigClass::TwoLines { first: 5, second: 4, through_intersection: false }) => q * q - 1 - 6 * (q - 1),
        (3, ConfigClass::TwoLines { first: 4, second: 4, through_intersection: true }) => q * q - 1 - 3 * (q - 1),
        (3, ConfigClass::CubicPencilBase) => q - 1,
        _ => 0,
    }
}

fn collinear_dual_counts_closed(d: u32, m: u32, q: u64) -> u64 {
    if m < d + 2 {
        return 0;
    }
    let g = CurveGeometry::for_q(q).unwrap();
    u64::try_from(collinear_dual_counts(g.plane(), d, m).unwrap().full_support_formula).unwrap()
}

#[test]
fn low_weight_dual_coefficients_from_supports() {
    for q in [3u64, 4] {
        let g = CurveGeometry::for_q(q).unwrap();
        let scan = ConfigScanner::new(&g);
        for (d, weights, family) in [(2u32, 4..=6usize, "dual_conic"), (3, 5..=9, "dual_cubic")] {
            for k in weights {
                let census = scan.dual_support_census(d, k, &Budget::DEFAULT).unwrap();
                let expect = formula(&format!("B{k}_{family}"), q);
                assert_eq!(BigInt::from(census.words), expect, "q={q} d={d} k={k}");
                let rebuilt: u64 = census.sets.iter().map(|(&tag, &n)| n * words_per_set(tag, d, q)).sum();
                assert_eq!(rebuilt, census.words, "q={q} d={d} k={k} {:?}", census.sets);
                let stray: BTreeMap<_, _> =
                    census.words_by_class.iter().filter(|(&tag, &w)| w > 0 && words_per_set(tag, d, q) == 0).collect();
                assert!(stray.is_empty(), "q={q} d={d} k={k} {stray:?}");
            }
        }
    }
}
