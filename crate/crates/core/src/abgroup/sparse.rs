//! Sparse elimination of unit pivots.
//!
//! Relation matrices coming from squares instances and simplicial boundary
//! maps are huge but very sparse and full of ±1 entries. Eliminating those
//! pivots first is a sequence of unimodular row/column operations, so the
//! remaining block has the same nontrivial invariant factors and is small
//! enough for the dense Smith form.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

pub(crate) type SparseRow = BTreeMap<usize, BigInt>;

pub(crate) fn sparse_row(v: &[BigInt]) -> SparseRow {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub(crate) struct Reduction {
    /// `(column, row)` in elimination order; `row[column]` is ±1.
    pub pivots: Vec<(usize, SparseRow)>,
    /// Rows left after elimination; they only touch surviving columns.
    pub residual: Vec<SparseRow>,
    pub eliminated: Vec<bool>,
}

pub(crate) fn eliminate_units(ncols: usize, input: Vec<SparseRow>) -> Reduction {
    let mut rows: Vec<Option<SparseRow>> = input.into_iter().map(Some).collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for &c in r.as_ref().unwrap().keys() {
            col_rows[c].insert(i);
        }
    }
    let mut eliminated = vec![false; ncols];
    let mut pivots = Vec::new();
    let mut queue: VecDeque<usize> = (0..rows.len()).collect();
    let mut queued: Vec<bool> = vec![true; rows.len()];

    while let Some(i) = queue.pop_front() {
        queued[i] = false;
        let Some(row) = rows[i].as_ref() else { continue };
        if row.is_empty() {
            rows[i] = None;
            continue;
        }
        // among unit entries prefer the sparsest column, then the highest index
        let pick = row
            .iter()
            .filter(|(_, x)| x.abs().is_one())
            .map(|(&c, _)| c)
            .min_by_key(|&c| (col_rows[c].len(), std::cmp::Reverse(c)));
        let Some(p) = pick else { continue };
        let pivot_row = rows[i].take().unwrap();
        for &c in pivot_row.keys() {
            col_rows[c].remove(&i);
        }
        let unit = pivot_row[&p].clone();
        let targets: Vec<usize> = col_rows[p].iter().copied().collect();
        for j in targets {
            let target = rows[j].as_mut().unwrap();
            let factor = &target[&p] * &unit;
            for (&c, x) in &pivot_row {
                let entry = target.entry(c).or_insert_with(BigInt::zero);
                let was_zero = entry.is_zero();
                *entry -= &factor * x;
                if entry.is_zero() {
                    target.remove(&c);
                    if !was_zero {
                        col_rows[c].remove(&j);
                    }
                } else if was_zero {
                    col_rows[c].insert(j);
                }
            }
            if !queued[j] {
                queued[j] = true;
                queue.push_back(j);
            }
        }
        debug_assert!(col_rows[p].is_empty());
        eliminated[p] = true;
        pivots.push((p, pivot_row));
    }

    let residual = rows.into_iter().flatten().filter(|r| !r.is_empty()).collect();
    Reduction { pivots, residual, eliminated }
}

/// Same contract as `eliminate_units`, for long streams of mostly redundant
/// rows: each row is reduced against the pivots found so far on arrival and
/// dropped when it vanishes. Rows without a unit entry are held back and go
/// through `eliminate_units` at the end.
pub(crate) fn eliminate_stream(ncols: usize, input: impl IntoIterator<Item = SparseRow>) -> Reduction {
    // subs[p] expresses an eliminated column in live columns; users[c] lists
    // the eliminated columns whose expression mentions live column c
    let mut subs: Vec<Option<SparseRow>> = vec![None; ncols];
    let mut users: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    let mut pivots = Vec::new();
    let mut pending = Vec::new();
    for row in input {
        let row = substitute(&row, &subs);
        if row.is_empty() {
            continue;
        }
        let pick = row
            .iter()
            .filter(|(_, x)| x.abs().is_one())
            .map(|(&c, _)| c)
            .min_by_key(|&c| (users[c].len(), std::cmp::Reverse(c)));
        let Some(p) = pick else {
            pending.push(row);
            continue;
        };
        let unit = &row[&p];
        let expr: SparseRow = row.iter().filter(|(&c, _)| c != p).map(|(&c, x)| (c, -(x * unit))).collect();
        for q in std::mem::take(&mut users[p]) {
            let sub = subs[q].as_mut().expect("users point at eliminated columns");
            let coef = sub.remove(&p).expect("user mentions the pivot");
            for (&c, y) in &expr {
                let entry = sub.entry(c).or_insert_with(BigInt::zero);
                let was_zero = entry.is_zero();
                *entry += &coef * y;
                if entry.is_zero() {
                    sub.remove(&c);
                    if !was_zero {
                        users[c].remove(&q);
                    }
                } else if was_zero {
                    users[c].insert(q);
                }
            }
        }
        for &c in expr.keys() {
            users[c].insert(p);
        }
        subs[p] = Some(expr);
        pivots.push((p, row));
    }
    let pending: Vec<SparseRow> = pending.iter().map(|r| substitute(r, &subs)).filter(|r| !r.is_empty()).collect();
    let tail = eliminate_units(ncols, pending);
    let eliminated = (0..ncols).map(|c| subs[c].is_some() || tail.eliminated[c]).collect();
    pivots.extend(tail.pivots);
    Reduction { pivots, residual: tail.residual, eliminated }
}

fn substitute(row: &SparseRow, subs: &[Option<SparseRow>]) -> SparseRow {
    let mut out = SparseRow::new();
    let mut add = |c: usize, x: BigInt| {
        let entry = out.entry(c).or_insert_with(BigInt::zero);
        *entry += x;
        if entry.is_zero() {
            out.remove(&c);
        }
    };
    for (&c, x) in row {
        match &subs[c] {
            Some(sub) => sub.iter().for_each(|(&d, y)| add(d, x * y)),
            None => add(c, x.clone()),
        }
    }
    out
}

/// Invariant factors of `a` (all of them, including the ones), sorted so that
/// each divides the next, with `min(rows, cols)` entries.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let rows: Vec<SparseRow> = (0..a.rows()).map(|r| sparse_row(a.row(r))).collect();
    let red = eliminate_units(a.cols(), rows);
    let survivors: Vec<usize> = (0..a.cols()).filter(|&c| !red.eliminated[c]).collect();
    let index: BTreeMap<usize, usize> = survivors.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut dense = IntMatrix::zeros(red.residual.len(), survivors.len());
    for (r, row) in red.residual.iter().enumerate() {
        for (c, x) in row {
            dense.set(r, index[c], x.clone());
        }
    }
    let snf = super::snf::smith_normal_form(&dense);
    let mut d: Vec<BigInt> = std::iter::repeat_n(BigInt::one(), red.pivots.len()).collect();
    d.extend(snf.d.into_iter().filter(|x| !x.is_zero()));
    d.resize(a.rows().min(a.cols()), BigInt::zero());
    d
}

/// Rank of an integer matrix.
pub fn rank(a: &IntMatrix) -> usize {
    invariant_factors(a).iter().filter(|x| !x.is_zero()).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::snf::smith_normal_form;

    #[test]
    fn agrees_with_dense() {
        let a = IntMatrix::from_rows(&[[1, 2, 0, 3], [2, 4, 6, 0], [0, 0, 3, 9], [1, 1, 1, 1]]);
        assert_eq!(invariant_factors(&a), smith_normal_form(&a).d);
        let b = IntMatrix::from_rows(&[[2, 4], [6, 8], [4, 8]]);
        assert_eq!(invariant_factors(&b), smith_normal_form(&b).d);
    }
}
