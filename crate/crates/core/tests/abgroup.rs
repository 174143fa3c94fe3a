use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use scissors_core::abgroup::{
    invariant_factors, quotient_invariants, smith_normal_form, AbGroupPresentation, IntMatrix, Quotient,
};
use scissors_core::acceptance::oracle::{bareiss_det, coset_count};

fn matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |e| IntMatrix::new(r, c, e.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

fn square(max: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max).prop_flat_map(move |n| {
        prop::collection::vec(-bound..=bound, n * n)
            .prop_map(move |e| IntMatrix::new(n, n, e.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

#[test]
fn known_groups() {
    let g = AbGroupPresentation::from_small(["a", "b"], &[vec![2, 0], vec![0, 3]]).unwrap();
    assert_eq!(quotient_invariants(&g).to_string(), "Z/6");
    let g = AbGroupPresentation::from_small(["a", "b", "c"], &[vec![2, 4, 0], vec![0, 0, 0]]).unwrap();
    assert_eq!(quotient_invariants(&g).to_string(), "Z^2 + Z/2");
    let g = AbGroupPresentation::free(["x"]).unwrap();
    assert_eq!(quotient_invariants(&g).to_string(), "Z^1");
}

proptest! {
    #[test]
    fn smith_form_diagonalizes(a in matrix(5, 5, 9)) {
        let s = smith_normal_form(&a);
        let diag = IntMatrix::diagonal(a.rows(), a.cols(), &s.d);
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), diag);
        prop_assert_eq!(bareiss_det(&s.u.to_rows()).abs(), BigInt::one());
        prop_assert_eq!(bareiss_det(&s.v.to_rows()).abs(), BigInt::one());
        for w in s.d.windows(2) {
            prop_assert!(!w[0].is_negative());
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
    }

    #[test]
    fn sparse_and_dense_agree(a in matrix(6, 6, 5)) {
        let dense = smith_normal_form(&a).d;
        prop_assert_eq!(invariant_factors(&a), dense);
    }

    #[test]
    fn transpose_keeps_invariant_factors(a in matrix(5, 5, 7)) {
        prop_assert_eq!(smith_normal_form(&a).d, smith_normal_form(&a.transpose()).d);
    }

    #[test]
    fn order_is_the_determinant(a in square(4, 4)) {
        let rows = a.to_rows();
        let det = bareiss_det(&rows).abs();
        let q = Quotient::new(a.cols(), &rows);
        match q.invariants().order() {
            Some(order) => {
                prop_assert_eq!(&order, &det);
                if let Some(n) = coset_count(&rows) {
                    prop_assert_eq!(BigInt::from(n), det);
                }
            }
            None => prop_assert!(det.is_zero()),
        }
    }

    #[test]
    fn relations_vanish_and_normal_form_is_a_function(a in matrix(4, 4, 6), x in prop::collection::vec(-5i64..=5, 4)) {
        let rows = a.to_rows();
        let q = Quotient::new(a.cols(), &rows);
        for r in &rows {
            prop_assert!(q.is_zero(r).unwrap());
        }
        let x: Vec<BigInt> = x[..a.cols()].iter().map(|&v| BigInt::from(v)).collect();
        let shifted: Vec<BigInt> = x.iter().zip(&rows[0]).map(|(a, b)| a + b * 3).collect();
        prop_assert_eq!(q.normal_form(&x).unwrap(), q.normal_form(&shifted).unwrap());
    }
}
