//! Smith normal form over the integers.
//!
//! Pivoting always takes a nonzero entry of minimal absolute value in the
//! active block, ties broken by the lexicographically least `(row, col)`.
//! This makes the transforms a deterministic function of the input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `u · a · v == diag(d)` with `u`, `v` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Invariant factors, `min(rows, cols)` of them, nonnegative, each dividing
    /// the next; zeros trail.
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.d.iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let full = SmithCalc::run(a, false);
    SmithForm { d: full.d, u: full.u, v: full.v }
}

/// Smith form together with the inverses of both transforms.
pub(crate) struct FullSmith {
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

pub(crate) fn smith_with_inverses(a: &IntMatrix) -> FullSmith {
    SmithCalc::run(a, true)
}

type Rows = Vec<Vec<BigInt>>;

struct SmithCalc {
    a: Rows,
    u: Rows,
    v: Rows,
    v_inv: Option<Rows>,
    rows: usize,
    cols: usize,
}

fn identity_rows(n: usize) -> Rows {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn into_matrix(n: usize, m: usize, rows: Rows) -> IntMatrix {
    IntMatrix::new(n, m, rows.into_iter().flatten().collect()).expect("square transform")
}

impl SmithCalc {
    fn run(a: &IntMatrix, track_inverse: bool) -> FullSmith {
        let (rows, cols) = (a.rows(), a.cols());
        let mut calc = SmithCalc {
            a: a.to_rows(),
            u: identity_rows(rows),
            v: identity_rows(cols),
            v_inv: track_inverse.then(|| identity_rows(cols)),
            rows,
            cols,
        };
        calc.process();
        let n = rows.min(cols);
        let d = (0..n).map(|i| calc.a[i][i].clone()).collect();
        let v_inv = calc.v_inv.take().unwrap_or_else(|| identity_rows(0));
        let v_inv_dim = v_inv.len();
        FullSmith {
            d,
            u: into_matrix(rows, rows, calc.u),
            v: into_matrix(cols, cols, calc.v),
            v_inv: into_matrix(v_inv_dim, v_inv_dim, v_inv),
        }
    }

    fn pick_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[bi][bj].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            self.u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
        if let Some(inv) = self.v_inv.as_mut() {
            inv.swap(i, j);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            let (s, d) = pair_mut(m, src, dst);
            for (x, y) in d.iter_mut().zip(s.iter()) {
                if !y.is_zero() {
                    *x += q * y;
                }
            }
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            if !row[src].is_zero() {
                let delta = q * &row[src];
                row[dst] += delta;
            }
        }
        // V ← V·F with F = I + q·E[src,dst]; F⁻¹ = I − q·E[src,dst], so
        // V⁻¹ ← F⁻¹·V⁻¹ subtracts q·row[dst] from row[src].
        if let Some(inv) = self.v_inv.as_mut() {
            let (d, s) = pair_mut(inv, dst, src);
            for (x, y) in s.iter_mut().zip(d.iter()) {
                if !y.is_zero() {
                    *x -= q * y;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -&*x;
        }
    }

    fn process(&mut self) {
        let n = self.rows.min(self.cols);
        for t in 0..n {
            loop {
                let Some((pi, pj)) = self.pick_pivot(t) else {
                    return;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let p = self.a[t][t].clone();
                let mut clean = true;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = &self.a[i][t] / &p;
                    if !q.is_zero() {
                        self.add_row(i, t, &-q);
                    }
                    if !self.a[i][t].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = &self.a[t][j] / &p;
                    if !q.is_zero() {
                        self.add_col(j, t, &-q);
                    }
                    if !self.a[t][j].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                if let Some(i) = self.first_non_multiple(t, &p) {
                    self.add_row(t, i, &BigInt::one());
                    continue;
                }
                break;
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }

    fn first_non_multiple(&self, t: usize, p: &BigInt) -> Option<usize> {
        (t + 1..self.rows).find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(p)))
    }
}

fn pair_mut(m: &mut Rows, a: usize, b: usize) -> (&Vec<BigInt>, &mut Vec<BigInt>) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = m.split_at_mut(b);
        (&lo[a], &mut hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(a);
        (&hi[0], &mut lo[b])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d_of(rows: &[[i64; 2]]) -> Vec<i64> {
        let s = smith_normal_form(&IntMatrix::from_rows(rows));
        s.d.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn diag_two_three() {
        assert_eq!(d_of(&[[2, 0], [0, 3]]), vec![1, 6]);
    }

    #[test]
    fn zero_matrix_keeps_identity_transforms() {
        let s = smith_normal_form(&IntMatrix::zeros(2, 2));
        assert_eq!(s.d, vec![BigInt::zero(), BigInt::zero()]);
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(2));
    }

    #[test]
    fn two_four_six_eight() {
        assert_eq!(d_of(&[[2, 4], [6, 8]]), vec![2, 4]);
    }

    #[test]
    fn inverse_tracking() {
        let a = IntMatrix::from_rows(&[[3, 5, 7], [2, 4, 9], [1, 0, 6]]);
        let full = smith_with_inverses(&a);
        assert_eq!(full.v.mul(&full.v_inv).unwrap(), IntMatrix::identity(3));
        let diag = full.u.mul(&a).unwrap().mul(&full.v).unwrap();
        assert_eq!(diag, IntMatrix::diagonal(3, 3, &full.d));
    }

    #[test]
    fn rectangular() {
        let a = IntMatrix::from_rows(&[[4, 6, 8]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.d, vec![BigInt::from(2)]);
        let diag = s.u.mul(&a).unwrap().mul(&s.v).unwrap();
        assert_eq!(diag, IntMatrix::diagonal(1, 3, &s.d));
    }
}
