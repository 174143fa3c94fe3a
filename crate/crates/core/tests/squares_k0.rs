use num_bigint::BigInt;
use proptest::prelude::*;

use scissors_core::abgroup::{invariant_factors, quotient_invariants, IntMatrix};
use scissors_core::squares_k0::{k0_of_mfd2, k0_presentation, Caps, SquaresPresentation};
use scissors_core::surface::{DiffeoClass, Piece};

fn presentation() -> impl Strategy<Value = (usize, usize, Vec<[usize; 4]>)> {
    (1usize..7).prop_flat_map(|n| (Just(n), 0..n, prop::collection::vec(prop::array::uniform4(0..n), 0..8)))
}

fn build(n: usize, base: usize, squares: Vec<[usize; 4]>) -> SquaresPresentation {
    SquaresPresentation::new((0..n).map(|i| format!("X{i}")).collect(), base, squares).unwrap()
}

/// `Z^n` modulo `[O]` and `[A] + [D] - [B] - [C]`, counted directly.
fn direct(n: usize, base: usize, squares: &[[usize; 4]]) -> (usize, Vec<BigInt>) {
    let mut rows = vec![vec![0i64; n]];
    rows[0][base] = 1;
    for &[a, b, c, d] in squares {
        let mut r = vec![0i64; n];
        r[a] += 1;
        r[d] += 1;
        r[b] -= 1;
        r[c] -= 1;
        rows.push(r);
    }
    let m = IntMatrix::from_rows(&rows);
    let f = invariant_factors(&m);
    let rank = f.iter().filter(|x| *x != &BigInt::from(0)).count();
    (n - rank, f.into_iter().filter(|x| x > &BigInt::from(1)).collect())
}

#[test]
fn two_objects_without_squares() {
    let p = build(2, 0, vec![]);
    assert_eq!(quotient_invariants(&k0_presentation(&p)).to_string(), "Z^1");
}

#[test]
fn small_caps_k0() {
    let k = k0_of_mfd2(Caps::new(2, 2, 2));
    assert_eq!(k.invariants.to_string(), "Z^2");
    let sphere = k.coords_of(&DiffeoClass::single(0, 0)).unwrap().clone();
    let two = k.coords_of(&DiffeoClass::from_pieces(vec![Piece::new(0, 0), Piece::new(0, 0)]));
    let doubled: Vec<BigInt> = sphere.free.iter().map(|x| x * 2).collect();
    assert_eq!(two.unwrap().free, doubled);
}

proptest! {
    #[test]
    fn matches_direct_count((n, base, squares) in presentation()) {
        let g = quotient_invariants(&k0_presentation(&build(n, base, squares.clone())));
        let (free, torsion) = direct(n, base, &squares);
        prop_assert_eq!(g.free_rank, free);
        prop_assert_eq!(g.torsion, torsion);
    }

    #[test]
    fn square_order_does_not_matter((n, base, squares) in presentation(), seed in any::<u64>()) {
        let mut shuffled = squares.clone();
        let k = shuffled.len().max(1);
        shuffled.rotate_left(seed as usize % k);
        shuffled.reverse();
        let a = quotient_invariants(&k0_presentation(&build(n, base, squares)));
        let b = quotient_invariants(&k0_presentation(&build(n, base, shuffled)));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn relabeling_objects_does_not_matter((n, base, squares) in presentation(), shift in 0usize..7) {
        let r = |i: usize| (i + shift) % n;
        let moved: Vec<[usize; 4]> = squares.iter().map(|s| s.map(r)).collect();
        let a = quotient_invariants(&k0_presentation(&build(n, base, squares)));
        let b = quotient_invariants(&k0_presentation(&build(n, r(base), moved)));
        prop_assert_eq!(a, b);
    }
}
