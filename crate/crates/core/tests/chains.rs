use num_bigint::BigInt;
use proptest::prelude::*;

use scissors_core::abgroup::IntMatrix;
use scissors_core::chains::{euler_char, homology, pushout, quasi_iso_type_equal, ChainComplex, ChainError, ChainMap};

/// `Z --k--> Z` in degrees `n-1, n`, or `Z` alone in degree `n` when `k` is `None`.
fn elementary(n: i64, k: Option<i64>) -> ChainComplex {
    match k {
        None => ChainComplex::point(n),
        Some(k) => ChainComplex::new(n - 1, vec![1, 1], vec![IntMatrix::from_rows(&[[k]])]).unwrap(),
    }
}

fn blocks() -> impl Strategy<Value = Vec<(i64, Option<i64>)>> {
    prop::collection::vec((1i64..=3, prop::option::of(-4i64..=4)), 1..6)
}

fn assemble(blocks: &[(i64, Option<i64>)]) -> ChainComplex {
    blocks.iter().fold(ChainComplex::zero(), |acc, &(n, k)| acc.direct_sum(&elementary(n, k)))
}

/// Unimodular `(P, P⁻¹)` from elementary row operations.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> (IntMatrix, IntMatrix) {
    let (mut p, mut q) = (IntMatrix::identity(n), IntMatrix::identity(n));
    for &(i, j, t) in ops {
        if n < 2 || i % n == j % n {
            continue;
        }
        let (i, j) = (i % n, j % n);
        let mut e = IntMatrix::identity(n);
        e.set(i, j, BigInt::from(t));
        let mut inv = IntMatrix::identity(n);
        inv.set(i, j, BigInt::from(-t));
        p = p.mul(&e).unwrap();
        q = inv.mul(&q).unwrap();
    }
    (p, q)
}

#[test]
fn corrupted_boundary_is_rejected() {
    let d1 = IntMatrix::from_rows(&[[1, -1]]);
    let d2 = IntMatrix::from_rows(&[[1], [2]]);
    let err = ChainComplex::new(0, vec![1, 2, 1], vec![d1, d2]).unwrap_err();
    assert!(matches!(err, ChainError::NotAComplex { degree: 2 }));
    assert!(err.to_string().contains("∂∘∂"));
}

proptest! {
    #[test]
    fn homology_of_elementary_sums(bs in blocks()) {
        let c = assemble(&bs);
        let h = homology(&c);
        for n in c.lo()..=c.hi() {
            let free = bs.iter().filter(|&&(m, k)| k.is_none() && m == n).count()
                + bs.iter().filter(|&&(m, k)| k == Some(0) && (m == n || m - 1 == n)).count();
            let mut torsion: Vec<i64> = bs
                .iter()
                .filter_map(|&(m, k)| k.filter(|k| k.abs() > 1 && m - 1 == n).map(i64::abs))
                .collect();
            torsion.sort();
            let got = h.at(n);
            prop_assert_eq!(got.free_rank, free);
            let mut order: BigInt = got.torsion.iter().product();
            if got.torsion.is_empty() {
                order = BigInt::from(1);
            }
            prop_assert_eq!(order, BigInt::from(torsion.iter().product::<i64>()));
        }
        prop_assert_eq!(euler_char(&c), h.euler_characteristic());
    }

    #[test]
    fn change_of_basis_is_a_quasi_isomorphism(
        bs in blocks(),
        ops in prop::collection::vec((0usize..8, 0usize..8, -3i64..=3), 0..10),
    ) {
        let c = assemble(&bs);
        let bases: Vec<_> = c.ranks().iter().map(|&r| unimodular(r, &ops)).collect();
        let d = c.change_basis(&bases).unwrap();
        prop_assert!(quasi_iso_type_equal(&c, &d));
        prop_assert!(quasi_iso_type_equal(&d, &c));
        prop_assert_eq!(euler_char(&c), euler_char(&d));
    }

    #[test]
    fn acyclic_summands_change_nothing(bs in blocks(), n in 0i64..4) {
        let c = assemble(&bs);
        prop_assert!(quasi_iso_type_equal(&c, &c.direct_sum(&ChainComplex::acyclic(n))));
    }

    #[test]
    fn pushout_of_identities(bs in blocks()) {
        let c = assemble(&bs);
        let id = ChainMap::identity(&c);
        let p = pushout(&id, &id).unwrap();
        prop_assert!(quasi_iso_type_equal(&p.complex, &c));
    }
}
