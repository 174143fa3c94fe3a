use proptest::prelude::*;

use scissors_core::chains::homology;
use scissors_core::euler_functor::{chain_class, chains_of, functor_on_square, generate_squares, SquareInstance};
use scissors_core::surface::{build_standard, candidate_circles, disjoint_union, octahedron};

fn piece() -> impl Strategy<Value = (u32, u32)> {
    (0u32..=2, 0u32..=3)
}

#[test]
fn sphere_chains() {
    let h = homology(&chains_of(&octahedron()));
    assert_eq!(h.to_string(), "H0=Z^1 H2=Z^1");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn chain_class_is_euler_characteristic((g1, b1) in piece(), (g2, b2) in piece()) {
        let s = disjoint_union(&build_standard(g1, b1), &build_standard(g2, b2));
        prop_assert_eq!(chain_class(&s), s.euler_characteristic());
    }

    #[test]
    fn homology_of_standard_surfaces((g, b) in piece()) {
        let h = homology(&chains_of(&build_standard(g, b)));
        let h1 = if b == 0 { 2 * g } else { 2 * g + b - 1 };
        prop_assert_eq!(h.at(0).free_rank, 1);
        prop_assert_eq!(h.at(1).free_rank, h1 as usize);
        prop_assert_eq!(h.at(2).free_rank, usize::from(b == 0));
        prop_assert!((0..=2).all(|n| h.at(n).torsion.is_empty()));
    }

    #[test]
    fn generated_squares_pass(seed in any::<u64>()) {
        for q in generate_squares(3, seed) {
            let r = functor_on_square(&q).unwrap();
            prop_assert!(r.passed(), "{}", r);
        }
    }

    #[test]
    fn splitting_along_any_circle((g, b) in piece(), pick in any::<prop::sample::Index>()) {
        let s = build_standard(g, b);
        let circles = candidate_circles(&s);
        prop_assume!(!circles.is_empty());
        let q = SquareInstance::along_circle(&s, pick.get(&circles)).unwrap();
        prop_assert_eq!(
            q.a.euler_characteristic() + q.d.euler_characteristic(),
            q.b.euler_characteristic() + q.c.euler_characteristic()
        );
        prop_assert!(functor_on_square(&q).unwrap().passed());
    }

    #[test]
    fn coproduct_squares_pass((g1, b1) in piece(), (g2, b2) in piece()) {
        let q = SquareInstance::coproduct(&build_standard(g1, b1), &build_standard(g2, b2));
        prop_assert!(functor_on_square(&q).unwrap().passed());
    }
}
