//! Small independent checks used by the acceptance criteria.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Determinant by fraction-free elimination.
pub fn bareiss_det(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = x / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn minor(rows: &[Vec<BigInt>], r: usize, c: usize) -> Vec<Vec<BigInt>> {
    rows.iter()
        .enumerate()
        .filter(|&(i, _)| i != r)
        .map(|(_, row)| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
        .collect()
}

/// `adj(A)` with `adj(A) · A = det(A) · I`.
pub fn adjugate(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = rows.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = bareiss_det(&minor(rows, j, i));
                    if (i + j) % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                })
                .collect()
        })
        .collect()
}

/// Order of `Z^n / (column span of A)` for square `A` with nonzero
/// determinant, by enumerating cosets. `v` and `w` lie in one coset exactly
/// when `adj(A)(v − w) ≡ 0 mod det A`, so cosets are keyed by `adj(A) v`.
pub fn coset_count(rows: &[Vec<BigInt>]) -> Option<usize> {
    let det = bareiss_det(rows).abs();
    if det.is_zero() {
        return None;
    }
    let adj = adjugate(rows);
    let n = rows.len();
    let gens: Vec<Vec<BigInt>> = (0..n).map(|j| (0..n).map(|i| adj[i][j].mod_floor(&det)).collect()).collect();
    let start = vec![BigInt::zero(); n];
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(key) = queue.pop_front() {
        for g in &gens {
            let next: Vec<BigInt> = key.iter().zip(g).map(|(a, b)| (a + b).mod_floor(&det)).collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Some(seen.len())
}
