use proptest::prelude::*;

use scissors_core::surface::{
    build_standard, candidate_circles, circle_signature, connected_sum, cut, disjoint_union, octahedron, paste,
    seven_vertex_torus, validate, DiffeoClass, Piece, SurfaceData, TriSurface,
};

fn piece() -> impl Strategy<Value = (u32, u32)> {
    (0u32..=2, 0u32..=3)
}

#[test]
fn library_surfaces() {
    assert_eq!(octahedron().classify(), DiffeoClass::single(0, 0));
    assert_eq!(octahedron().euler_characteristic(), 2);
    assert_eq!(seven_vertex_torus().classify(), DiffeoClass::single(1, 0));
    assert_eq!(seven_vertex_torus().vertex_count(), 7);
}

#[test]
fn broken_data_is_rejected() {
    let data: SurfaceData =
        serde_json::from_str(r#"{"vertices": 4, "triangles": [[0, 1, 2], [0, 2, 1]], "gluing": []}"#).unwrap();
    assert!(validate(&data).is_err());
    assert!(TriSurface::try_from(data).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn standard_surfaces_classify((g, b) in piece()) {
        let s = build_standard(g, b);
        prop_assert_eq!(s.classify(), DiffeoClass::single(g, b));
        prop_assert_eq!(s.euler_characteristic(), Piece::new(g, b).euler_characteristic());
        prop_assert_eq!(s.boundary_cycles().len(), b as usize);
    }

    #[test]
    fn union_adds((g1, b1) in piece(), (g2, b2) in piece()) {
        let (s, t) = (build_standard(g1, b1), build_standard(g2, b2));
        let u = disjoint_union(&s, &t);
        prop_assert_eq!(u.classify(), s.classify().union(&t.classify()));
        prop_assert_eq!(u.euler_characteristic(), s.euler_characteristic() + t.euler_characteristic());
        prop_assert_eq!(u.components().len(), 2);
    }

    #[test]
    fn connected_sum_adds_genus((g1, b1) in piece(), (g2, b2) in piece()) {
        let s = connected_sum(&build_standard(g1, b1), &build_standard(g2, b2));
        prop_assert_eq!(s.classify(), DiffeoClass::single(g1 + g2, b1 + b2));
    }

    #[test]
    fn canonical_form_is_idempotent((g, b) in piece(), flip in any::<bool>()) {
        let s = if flip { build_standard(g, b).reversed() } else { build_standard(g, b) };
        let (c, _) = s.canonicalize();
        prop_assert_eq!(c.classify(), s.classify());
        prop_assert_eq!(c.canonicalize().0, c);
    }

    #[test]
    fn cutting_then_pasting_restores_the_class((g, b) in piece(), pick in any::<prop::sample::Index>()) {
        let s = build_standard(g, b);
        let separating: Vec<_> = candidate_circles(&s)
            .into_iter()
            .filter(|c| circle_signature(&s, c).separating)
            .collect();
        prop_assume!(!separating.is_empty());
        let c = pick.get(&separating);
        let sig = circle_signature(&s, c);
        let (cut_surface, record) = cut(&s, c).unwrap();
        prop_assert_eq!(cut_surface.euler_characteristic(), s.euler_characteristic());
        prop_assert_eq!(cut_surface.classify(), DiffeoClass::from_pieces(vec![sig.left, sig.right]));
        let glued = paste(&cut_surface, &record.identity_gluings()[0]).unwrap();
        prop_assert_eq!(glued.classify(), s.classify());
    }
}
