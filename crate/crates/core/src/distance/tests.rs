use super::*;
use crate::boolfn::{mid_band, truncate_uc, Builtin, BuiltinFn};
use crate::violations::DEFAULT_MATCHING_CAP;
use proptest::prelude::*;
use rand::Rng;

fn pts(ones: &[&str]) -> Vec<u64> {
    ones.iter().map(|s| crate::boolfn::Point::parse(s).unwrap().bits()).collect()
}

fn table(n: usize, ones: &[&str]) -> TruthTable {
    TruthTable::from_ones(n, pts(ones)).unwrap()
}

/// Pairwise definitions, used as the oracle for the transform-based checks.
fn uc_pairwise(f: &TruthTable) -> bool {
    let ones: Vec<u64> = f.ones().collect();
    ones.iter().all(|&a| ones.iter().all(|&b| f.get(a | b)))
}

fn int_pairwise(f: &TruthTable) -> bool {
    let ones: Vec<u64> = f.ones().collect();
    ones.iter().all(|&a| ones.iter().all(|&b| a & b != 0))
}

fn brute_dist(f: &TruthTable, property: impl Fn(&TruthTable) -> bool) -> u64 {
    let n = f.arity();
    (0..1u64 << (1 << n))
        .map(|g| TruthTable::from_mask(n, g).unwrap())
        .filter(|g| property(g))
        .map(|g| f.hamming(&g).unwrap())
        .min()
        .unwrap()
}

#[test]
fn property_check_examples() {
    for n in 1..=8 {
        let maj = TruthTable::from_function(&BuiltinFn { kind: Builtin::Majority, arity: n }).unwrap();
        assert!(is_union_closed(&maj));
        let d1 = TruthTable::from_function(&BuiltinFn { kind: Builtin::Dictator(1), arity: n }).unwrap();
        assert!(is_intersecting(&d1));
        let one = TruthTable::from_function(&BuiltinFn { kind: Builtin::Const(true), arity: n }).unwrap();
        assert!(!is_intersecting(&one));
        assert!(is_union_closed(&TruthTable::zeros(n).unwrap()));
        assert!(!is_intersecting(&TruthTable::from_ones(n, [0]).unwrap()));
    }
    assert!(!is_union_closed(&table(2, &["01", "10"])));
}

#[test]
fn checks_agree_with_pairwise_definitions_exhaustively() {
    for n in 1..=4 {
        for m in 0..1u64 << (1 << n) {
            let f = TruthTable::from_mask(n, m).unwrap();
            assert_eq!(is_union_closed(&f), uc_pairwise(&f), "{f:?}");
            assert_eq!(is_intersecting(&f), int_pairwise(&f), "{f:?}");
        }
    }
}

#[test]
fn distance_examples() {
    let one = TruthTable::from_ones(2, 0..4).unwrap();
    assert_eq!(dist_int_exact(&one).unwrap().to_json().value, "2/4");
    let d1 = TruthTable::from_function(&BuiltinFn { kind: Builtin::Dictator(1), arity: 5 }).unwrap();
    assert_eq!(dist_int_exact(&d1).unwrap().numerator, 0);
    let two = table(2, &["01", "10"]);
    assert_eq!(dist_int_exact(&two).unwrap().value(), Ratio::new(1, 4));
    let r = dist_uc_exact(&two).unwrap();
    assert_eq!(r.to_json().value, "1/4");
    assert!(is_union_closed(r.certificate.as_ref().unwrap()));
    let maj = TruthTable::from_function(&BuiltinFn { kind: Builtin::Majority, arity: 4 }).unwrap();
    assert_eq!(dist_uc_exact(&maj).unwrap().numerator, 0);
    let three = table(3, &["001", "010", "100"]);
    assert_eq!(dist_uc_exact(&three).unwrap().to_json().value, "2/8");
    assert!(dist_uc_exact(&TruthTable::zeros(5).unwrap()).is_err());
}

#[test]
fn distance_json_shape() {
    let r = dist_uc_exact(&table(2, &["01", "10"])).unwrap();
    let s = serde_json::to_string(&r.to_json()).unwrap();
    assert_eq!(
        s,
        r#"{"value":"1/4","numerator":1,"denominator":4,"method":"exhaustive","certificate":{"n":2,"ones":[1]}}"#
    );
}

#[test]
fn union_closed_counts() {
    let counts: Vec<usize> = (1..=4).map(|n| union_closed_masks(n).unwrap().len()).collect();
    let brute: Vec<usize> = (1..=4)
        .map(|n| (0..1u64 << (1 << n)).filter(|&m| uc_pairwise(&TruthTable::from_mask(n, m).unwrap())).count())
        .collect();
    assert_eq!(counts, brute);
}

#[test]
fn exact_distances_match_full_enumeration() {
    for n in 1..=3 {
        for m in 0..1u64 << (1 << n) {
            let f = TruthTable::from_mask(n, m).unwrap();
            let di = dist_int_exact(&f).unwrap();
            assert_eq!(di.numerator, brute_dist(&f, int_pairwise), "{f:?}");
            let cert = di.certificate.unwrap();
            assert!(is_intersecting(&cert));
            assert_eq!(cert.hamming(&f).unwrap(), di.numerator);
            let du = dist_uc_exact(&f).unwrap();
            assert_eq!(du.numerator, brute_dist(&f, uc_pairwise));
            assert_eq!(du.certificate.unwrap().hamming(&f).unwrap(), du.numerator);
        }
    }
}

#[test]
fn sandwich_on_random_four_variable_functions() {
    let mut rng = crate::rng::stream(11, 0);
    for _ in 0..2000 {
        let f = TruthTable::from_mask(4, rng.gen::<u16>() as u64).unwrap();
        let d = dist_int_exact(&f).unwrap().numerator;
        let b = dist_int_bounds(&f, DEFAULT_MATCHING_CAP).unwrap();
        assert!(b.numerator <= d && d <= b.upper.unwrap(), "{f:?}");
    }
}

#[test]
fn repair_examples() {
    let maj = TruthTable::from_function(&BuiltinFn { kind: Builtin::Majority, arity: 5 }).unwrap();
    let (g, flipped) = repair_uc(&maj).unwrap();
    assert_eq!(g, maj);
    assert!(flipped.is_empty());
    let (g, flipped) = repair_uc(&table(2, &["01", "10"])).unwrap();
    assert_eq!(flipped, pts(&["11"]));
    assert_eq!(g.ones().collect::<Vec<_>>(), vec![1, 2, 3]);
    let (g, mut flipped) = repair_uc(&table(3, &["001", "010", "100"])).unwrap();
    let mut want = pts(&["011", "101", "110", "111"]);
    flipped.sort_unstable();
    want.sort_unstable();
    assert_eq!(flipped, want);
    assert!(is_union_closed(&g));
}

#[test]
fn tuple_count_examples() {
    let maj = TruthTable::from_function(&BuiltinFn { kind: Builtin::Majority, arity: 6 }).unwrap();
    assert_eq!(end_distinct_tuple_count(&maj, None).unwrap(), 0);
    assert_eq!(disjoint_tuple_count_lb(&maj).unwrap(), 0);
    let two = table(2, &["01", "10"]);
    assert_eq!(end_distinct_tuple_count(&two, None).unwrap(), 1);
    assert_eq!(disjoint_tuple_count_lb(&two).unwrap(), 1);
    // 1s at 001, 010, 110: ends 011 and 111 overall, only 011 from weight-1 members.
    let f = table(3, &["001", "010", "110"]);
    assert_eq!(end_distinct_tuple_count(&f, None).unwrap(), 2);
    assert_eq!(end_distinct_tuple_count(&f, Some(Band::new(1, 1, 3).unwrap())).unwrap(), 1);
    assert_eq!(end_distinct_tuple_count(&f, Some(Band::new(2, 2, 3).unwrap())).unwrap(), 0);
}

/// Brute force: ends of tuples whose members all lie in the band.
fn brute_ends(f: &TruthTable, band: Option<Band>) -> u64 {
    (0..f.len())
        .filter(|&z| {
            !f.get(z)
                && (0..f.len())
                    .filter(|&y| y & !z == 0 && f.get(y) && band.is_none_or(|b| b.contains(y.count_ones() as usize)))
                    .fold(0, |acc, y| acc | y)
                    == z
                && z != 0
        })
        .count() as u64
}

#[test]
fn repair_certifies_distance_exhaustively_at_three() {
    for m in 0..256u64 {
        let f = TruthTable::from_mask(3, m).unwrap();
        let d = dist_uc_exact(&f).unwrap().numerator;
        let (g, flipped) = repair_uc(&f).unwrap();
        assert!(is_union_closed(&g));
        assert!(flipped.len() as u64 >= d);
        assert_eq!(end_distinct_tuple_count(&f, None).unwrap(), flipped.len() as u64);
        // At least dist·2^n/n disjoint tuples.
        let c = disjoint_tuple_count_lb(&f).unwrap();
        assert!(3 * c >= d, "{f:?}: c={c}, d={d}");
    }
}

#[test]
fn truncation_keeps_half_the_distance() {
    for eps in [0.25, 0.5] {
        for m in 0..1u64 << 16 {
            let f = TruthTable::from_mask(4, m).unwrap();
            let t = TruthTable::from_function(&truncate_uc(&f, eps).unwrap()).unwrap();
            let d = dist_uc_exact(&f).unwrap().numerator;
            let dt = dist_uc_exact(&t).unwrap().numerator;
            // dt/16 ≥ d/32 - 1/16
            assert!(2 * dt + 2 >= d, "{f:?} eps={eps}");
        }
        let band = mid_band(4, eps, false).unwrap();
        assert_eq!(band, Band::full(4));
    }
}

proptest! {
    #[test]
    fn banded_ends_match_brute_force(m in any::<u32>(), lo in 0usize..=5, w in 0usize..=5) {
        let f = TruthTable::from_mask(5, m as u64).unwrap();
        let band = Band::new(lo, (lo + w).min(5), 5).unwrap();
        prop_assert_eq!(end_distinct_tuple_count(&f, Some(band)).unwrap(), brute_ends(&f, Some(band)));
        prop_assert_eq!(end_distinct_tuple_count(&f, None).unwrap(), brute_ends(&f, None));
    }

    #[test]
    fn checks_agree_at_larger_arity(bits in prop::collection::vec(any::<u64>(), 16), density in 1u32..8) {
        // Sparse random functions on 10 variables.
        let mut f = TruthTable::zeros(10).unwrap();
        for (k, &w) in bits.iter().enumerate() {
            for i in 0..64u64 {
                let idx = k as u64 * 64 + i;
                if (w >> i) & 1 == 1 && (w.rotate_left(i as u32) >> 60) < density as u64 {
                    f.set(idx, true);
                }
            }
        }
        prop_assert_eq!(is_union_closed(&f), uc_pairwise(&f));
        prop_assert_eq!(is_intersecting(&f), int_pairwise(&f));
    }
}
