use boolnl::{affine_table, degree, is_affine, to_anf, AffineSpec, TruthTable};
use proptest::prelude::*;

fn table(max_n: u32) -> impl Strategy<Value = TruthTable> {
    (0..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<u64>(), 1usize << n.saturating_sub(6))
            .prop_map(move |words| TruthTable::from_words(n, words).unwrap())
    })
}

/// Sum of the monomials whose variable sets lie inside the point.
fn evaluate(anf: &boolnl::AnfTable, point: u64) -> bool {
    anf.monomials()
        .into_iter()
        .filter(|&m| m & point == m)
        .count()
        % 2
        == 1
}

proptest! {
    #[test]
    fn moebius_is_an_involution(t in table(12)) {
        let anf = to_anf(&t);
        let back = to_anf(anf.coeffs());
        prop_assert_eq!(back.coeffs(), &t);
        prop_assert_eq!(anf.to_table(), t);
    }

    #[test]
    fn polynomial_reproduces_table(t in table(8)) {
        let anf = to_anf(&t);
        for x in 0..t.len() {
            prop_assert_eq!(evaluate(&anf, x), t.bit(x));
        }
        let by_hand = anf.monomials().iter().map(|m| m.count_ones()).max().unwrap_or(0);
        prop_assert_eq!(degree(&t), by_hand);
    }
}

#[test]
fn affine_count_is_two_to_the_n_plus_one() {
    for n in 0..=4u32 {
        let total = if n == 0 { 2 } else { 1u64 << (1 << n) };
        let count = (0..total)
            .filter(|&bits| is_affine(&TruthTable::from_words(n, vec![bits]).unwrap()))
            .count() as u64;
        assert_eq!(count, 1 << (n + 1), "n = {n}");
    }
}

#[test]
fn reflected_extension_of_affine_is_affine() {
    for n in 0..=8u32 {
        for mask in 0..1u64 << n {
            for c in [false, true] {
                let a = affine_table(AffineSpec::new(mask, c), n).unwrap();
                let ext = a.concat(&a.complement().reverse()).unwrap();
                assert!(is_affine(&ext), "n = {n}, mask = {mask}, c = {c}");
            }
        }
    }
}
