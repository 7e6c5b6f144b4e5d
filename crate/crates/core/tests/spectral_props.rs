use boolnl::{
    affine_table, brute_force_nonlinearity, nonlinearity, walsh_transform, AffineSpec, TruthTable,
};
use proptest::prelude::*;

fn table(min_n: u32, max_n: u32) -> impl Strategy<Value = TruthTable> {
    (min_n..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<u64>(), 1usize << n.saturating_sub(6))
            .prop_map(move |words| TruthTable::from_words(n, words).unwrap())
    })
}

/// Minimum distance over materialized affine tables.
fn materialized_min_distance(t: &TruthTable) -> u64 {
    let n = t.n();
    (0..1u64 << n)
        .flat_map(|mask| [false, true].map(|c| AffineSpec::new(mask, c)))
        .map(|spec| t.distance(&affine_table(spec, n).unwrap()).unwrap())
        .min()
        .unwrap()
}

proptest! {
    #[test]
    fn parseval_and_zero_entry(t in table(0, 12)) {
        let w = walsh_transform(&t);
        prop_assert_eq!(w.parseval_sum(), 1u64 << (2 * t.n()));
        prop_assert_eq!(w.values()[0] as i64, t.len() as i64 - 2 * t.weight() as i64);
        for &v in w.values() {
            prop_assert!(v.unsigned_abs() as u64 <= t.len());
            prop_assert_eq!(v.rem_euclid(2) as u64, t.len() % 2);
        }
    }

    #[test]
    fn butterfly_twice_scales_signs(t in table(0, 10)) {
        let w = walsh_transform(&t);
        let len = w.values().len();
        let mut buf: Vec<i64> = w.values().iter().map(|&v| v as i64).collect();
        let mut h = 1;
        while h < len {
            for pair in buf.chunks_exact_mut(2 * h) {
                let (lo, hi) = pair.split_at_mut(h);
                for (a, b) in lo.iter_mut().zip(hi) {
                    let (x, y) = (*a, *b);
                    *a = x + y;
                    *b = x - y;
                }
            }
            h *= 2;
        }
        for (i, v) in buf.iter().enumerate() {
            let sign = if t.bit(i as u64) { -1 } else { 1 };
            prop_assert_eq!(*v, sign * len as i64);
        }
    }

    #[test]
    fn brute_force_matches_materialized_scan(t in table(1, 7)) {
        prop_assert_eq!(brute_force_nonlinearity(&t).unwrap(), materialized_min_distance(&t));
    }

    #[test]
    fn nonlinearity_bounds_and_invariances(t in table(1, 11), mask in any::<u64>(), c in any::<bool>()) {
        let nl = nonlinearity(&t).unwrap();
        prop_assert!(nl <= t.weight());
        prop_assert!(nl <= t.len() / 2);
        prop_assert_eq!(nonlinearity(&t.complement()).unwrap(), nl);
        prop_assert_eq!(nonlinearity(&t.reverse()).unwrap(), nl);
        let a = affine_table(AffineSpec::new(mask & (t.len() - 1), c), t.n()).unwrap();
        prop_assert_eq!(nonlinearity(&t.xor(&a).unwrap()).unwrap(), nl);
    }
}

#[test]
fn oracle_equivalence_exhaustive_small_n() {
    for n in 1..=3u32 {
        for bits in 0..1u64 << (1 << n) {
            let t = TruthTable::from_words(n, vec![bits]).unwrap();
            let nl = nonlinearity(&t).unwrap();
            assert_eq!(nl, brute_force_nonlinearity(&t).unwrap(), "{t:?}");
            assert_eq!(nl, materialized_min_distance(&t), "{t:?}");
            assert_eq!(brute_force_nonlinearity(&t.complement()).unwrap(), nl);
        }
    }
}

#[test]
fn two_variable_nonlinearities() {
    // Only weight-1 and weight-3 functions are nonaffine on two variables.
    for bits in 0..16u64 {
        let t = TruthTable::from_words(2, vec![bits]).unwrap();
        let expected = u64::from(t.weight() % 2 == 1);
        assert_eq!(nonlinearity(&t).unwrap(), expected);
    }
}
