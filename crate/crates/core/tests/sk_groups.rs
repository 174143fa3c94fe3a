use proptest::prelude::*;

use scissors_core::sk_groups::{
    build_sk2, build_sk2_boundary, decide_equivalent, find_witness, invariant_registry, WitnessSearch,
};
use scissors_core::squares_k0::Caps;
use scissors_core::surface::{build_standard, disjoint_union, DiffeoClass, TriSurface};

fn class() -> impl Strategy<Value = Vec<(u32, u32)>> {
    prop::collection::vec((0u32..=2, 0u32..=2), 1..=2)
}

fn realize(pieces: &[(u32, u32)]) -> TriSurface {
    pieces.iter().fold(TriSurface::empty(), |acc, &(g, b)| disjoint_union(&acc, &build_standard(g, b)))
}

#[test]
fn group_shapes() {
    let caps = Caps::new(3, 3, 3);
    assert_eq!(build_sk2(caps).invariants().to_string(), "Z^1");
    assert_eq!(build_sk2_boundary(caps).invariants().to_string(), "Z^2");
}

#[test]
fn figure_two_pair_has_a_one_move_witness() {
    let m = disjoint_union(&build_standard(0, 2), &build_standard(1, 0));
    let n = disjoint_union(&build_standard(1, 2), &build_standard(0, 0));
    match find_witness(&m, &n, 3) {
        WitnessSearch::Found(w) => {
            assert_eq!(w.steps.len(), 1);
            assert_eq!(w.end_class(), n.classify());
            w.replay().unwrap();
        }
        WitnessSearch::Exhausted { states } => panic!("no witness after {states} classes"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn decided_by_euler_characteristic_and_boundary(a in class(), b in class()) {
        let (m, n) = (realize(&a), realize(&b));
        let d = decide_equivalent(&m, &n);
        let (cm, cn): (DiffeoClass, DiffeoClass) = (m.classify(), n.classify());
        let same = cm.euler_characteristic() == cn.euler_characteristic() && cm.boundary_circles() == cn.boundary_circles();
        prop_assert_eq!(d.equivalent, same);
        prop_assert_eq!(decide_equivalent(&n, &m).equivalent, d.equivalent);
        if d.equivalent {
            prop_assert!(d.invariants.iter().all(|(_, l, r)| l == r));
        }
    }

    #[test]
    fn invariants_are_additive(a in class(), b in class()) {
        let (m, n) = (realize(&a), realize(&b));
        let u = disjoint_union(&m, &n);
        for inv in invariant_registry() {
            prop_assert_eq!(inv.evaluate(&u.classify()), inv.evaluate(&m.classify()) + inv.evaluate(&n.classify()));
        }
    }
}
