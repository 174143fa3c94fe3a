//! The truncated category of compact oriented surfaces with squares.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use log::debug;
use serde::{Deserialize, Serialize};

use super::{k0_quotient, SquaresPresentation};
use crate::abgroup::{ElementCoords, GroupInvariants, Quotient};
use crate::surface::{DiffeoClass, Piece};

/// Bounds on genus and boundary circles per component, and on components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Caps {
    pub genus: u32,
    pub boundary: u32,
    pub components: u32,
}

impl Caps {
    pub fn new(genus: u32, boundary: u32, components: u32) -> Self {
        Caps { genus, boundary, components }
    }

    pub fn admits_piece(&self, p: &Piece) -> bool {
        p.genus <= self.genus && p.boundary <= self.boundary
    }

    pub fn admits(&self, pieces: &[Piece]) -> bool {
        pieces.len() <= self.components as usize && pieces.iter().all(|p| self.admits_piece(p))
    }

    /// Connected types within the caps, sorted.
    pub fn pieces(&self) -> Vec<Piece> {
        let mut out = Vec::new();
        for g in 0..=self.genus {
            for b in 0..=self.boundary {
                out.push(Piece::new(g, b));
            }
        }
        out
    }

    /// Closed connected types within the caps.
    pub fn closed_pieces(&self) -> Vec<Piece> {
        (0..=self.genus).map(|g| Piece::new(g, 0)).collect()
    }

    /// Empty class first, then by number of components, each size in
    /// lexicographic order of sorted piece lists.
    pub fn classes(&self) -> Vec<DiffeoClass> {
        let pieces = self.pieces();
        let mut out = vec![DiffeoClass::empty()];
        let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..self.components {
            let mut next = Vec::new();
            for combo in &layer {
                let start = combo.last().copied().unwrap_or(0);
                for i in start..pieces.len() {
                    let mut c = combo.clone();
                    c.push(i);
                    next.push(c);
                }
            }
            out.extend(next.iter().map(|c| DiffeoClass::from_pieces(c.iter().map(|&i| pieces[i]).collect())));
            layer = next;
        }
        out
    }
}

impl fmt::Display for Caps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.genus, self.boundary, self.components)
    }
}

impl FromStr for Caps {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<u32> = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|e| format!("bad cap {p:?}: {e}")))
            .collect::<Result<_, _>>()?;
        match parts[..] {
            [g, b, c] => Ok(Caps::new(g, b, c)),
            _ => Err(format!("caps need three comma-separated numbers, got {s:?}")),
        }
    }
}

/// Result of gluing `m[i][j]` boundary circles of `left[i]` to circles of
/// `right[j]`; untouched pieces pass through. A merged component made of
/// `v` pieces joined by `e` circles has genus `Σg + e − v + 1` and boundary
/// `Σb − 2e`.
pub fn glue_classes(left: &[Piece], right: &[Piece], m: &[Vec<u32>]) -> Vec<Piece> {
    let flat: Vec<u32> = m.iter().flatten().copied().collect();
    let mut out = Vec::new();
    glue_flat(left, right, &flat, &mut out);
    out
}

const MAX_NODES: usize = 32;

/// `glue_classes` with the matrix in row-major order, writing into `out`.
pub(crate) fn glue_flat(left: &[Piece], right: &[Piece], m: &[u32], out: &mut Vec<Piece>) {
    let (p, q) = (left.len(), right.len());
    let n = p + q;
    assert!(n <= MAX_NODES, "at most {MAX_NODES} pieces per gluing");
    let node = |i: usize| if i < p { left[i] } else { right[i - p] };
    let mut parent = [0usize; MAX_NODES];
    for (i, x) in parent.iter_mut().enumerate().take(n) {
        *x = i;
    }
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut edges = [0u32; MAX_NODES];
    for (cell, &k) in m.iter().enumerate() {
        if k > 0 {
            let (i, j) = (cell / q, cell % q);
            let (a, b) = (find(&mut parent, i), find(&mut parent, p + j));
            parent[a] = b;
            edges[i] += k;
        }
    }
    let mut acc = [(0u32, 0u32, 0u32, 0u32); MAX_NODES];
    for (i, &k) in edges.iter().enumerate().take(n) {
        let r = find(&mut parent, i);
        let piece = node(i);
        let e = &mut acc[r];
        e.0 += piece.genus;
        e.1 += piece.boundary;
        e.2 += k;
        e.3 += 1;
    }
    out.clear();
    for (r, &(g, b, e, v)) in acc.iter().enumerate().take(n) {
        if find(&mut parent, r) == r {
            out.push(Piece::new(g + e + 1 - v, b - 2 * e));
        }
    }
}

/// Calls `f` with every matrix `m` (row-major) with row sums at most (or,
/// when `exact`, equal to) `rows`, column sums likewise against `cols`, and
/// total between 1 and `kmax`.
pub(crate) fn for_each_gluing(rows: &[u32], cols: &[u32], exact: bool, kmax: u32, f: &mut dyn FnMut(&[u32], u32)) {
    let (p, q) = (rows.len(), cols.len());
    let mut m = vec![0u32; p * q];
    let mut row_left = rows.to_vec();
    let mut col_left = cols.to_vec();
    #[allow(clippy::too_many_arguments)]
    fn go(
        cell: usize,
        q: usize,
        m: &mut [u32],
        row_left: &mut [u32],
        col_left: &mut [u32],
        used: u32,
        kmax: u32,
        exact: bool,
        f: &mut dyn FnMut(&[u32], u32),
    ) {
        if cell == m.len() {
            let done = !exact || (row_left.iter().all(|&x| x == 0) && col_left.iter().all(|&x| x == 0));
            if used > 0 && done {
                f(m, used);
            }
            return;
        }
        let (i, j) = (cell / q, cell % q);
        // in exact mode the last cell of a row must absorb the rest of it
        let hi = row_left[i].min(col_left[j]).min(kmax - used);
        let lo = if exact && j == q - 1 { row_left[i] } else { 0 };
        if lo > hi {
            return;
        }
        for k in lo..=hi {
            m[cell] = k;
            row_left[i] -= k;
            col_left[j] -= k;
            go(cell + 1, q, m, row_left, col_left, used + k, kmax, exact, f);
            row_left[i] += k;
            col_left[j] += k;
        }
        m[cell] = 0;
    }
    if p == 0 || q == 0 {
        return;
    }
    go(0, q, &mut m, &mut row_left, &mut col_left, 0, kmax, exact, f);
}

/// Objects, squares and bookkeeping of the truncated instance.
#[derive(Clone, Debug)]
pub struct Mfd2Instance {
    pub caps: Caps,
    pub classes: Vec<DiffeoClass>,
    pub presentation: SquaresPresentation,
    pub coproduct_squares: usize,
    pub collar_squares: usize,
    /// Gluings whose result falls outside the caps.
    pub skipped: usize,
}

impl Mfd2Instance {
    pub fn index_of(&self, c: &DiffeoClass) -> Option<usize> {
        self.classes.iter().position(|x| x == c)
    }
}

fn label(c: &DiffeoClass) -> String {
    if c.is_empty() {
        "Ø".to_string()
    } else {
        c.to_string()
    }
}

/// Calls `f` with every matrix (row-major) whose row sums lie in
/// `1..=rows[i]`, column sums in `1..=cols[j]`, and total at most `kmax`.
pub(crate) fn for_each_covering(rows: &[u32], cols: &[u32], kmax: u32, f: &mut dyn FnMut(&[u32], u32)) {
    struct State<'a> {
        q: usize,
        rows: &'a [u32],
        cols: &'a [u32],
        m: Vec<u32>,
        row_sum: Vec<u32>,
        col_sum: Vec<u32>,
        kmax: u32,
    }
    fn go(s: &mut State, cell: usize, used: u32, f: &mut dyn FnMut(&[u32], u32)) {
        let p = s.rows.len();
        if cell == s.m.len() {
            if s.col_sum.iter().all(|&c| c > 0) {
                f(&s.m, used);
            }
            return;
        }
        let (i, j) = (cell / s.q, cell % s.q);
        if j == 0 && i > 0 && s.row_sum[i - 1] == 0 {
            return;
        }
        let rows_needed = (p - i - 1) as u32 + u32::from(s.row_sum[i] == 0);
        let cols_needed = s.col_sum.iter().filter(|&&c| c == 0).count() as u32;
        if used + rows_needed.max(cols_needed) > s.kmax {
            return;
        }
        let hi = (s.rows[i] - s.row_sum[i]).min(s.cols[j] - s.col_sum[j]).min(s.kmax - used);
        for k in 0..=hi {
            s.m[cell] = k;
            s.row_sum[i] += k;
            s.col_sum[j] += k;
            go(s, cell + 1, used + k, f);
            s.row_sum[i] -= k;
            s.col_sum[j] -= k;
        }
        s.m[cell] = 0;
    }
    if rows.is_empty() || cols.is_empty() {
        return;
    }
    let mut s = State {
        q: cols.len(),
        rows,
        cols,
        m: vec![0; rows.len() * cols.len()],
        row_sum: vec![0; rows.len()],
        col_sum: vec![0; cols.len()],
        kmax,
    };
    go(&mut s, 0, 0, f);
}

fn merge_into(out: &mut Vec<u16>, parts: &[&[u16]]) {
    out.clear();
    for p in parts {
        out.extend_from_slice(p);
    }
    out.sort_unstable();
}

/// Classes within caps with `Ø` as basepoint; coproduct squares
/// `(Ø, A, B, A⊔B)` and collar squares `(k annuli, M, M′, M ∪ M′)` for every
/// way of gluing `k` circles of `M` to `k` circles of `M′`.
///
/// A collar square splits into a core, the pieces that actually touch a
/// glued circle, and untouched pieces carried along on both sides, so the
/// core gluing is computed once per core.
pub fn mfd2_instance(caps: Caps) -> Mfd2Instance {
    let classes = caps.classes();
    let pieces = caps.pieces();
    let pid = |p: &Piece| (p.genus * (caps.boundary + 1) + p.boundary) as u16;
    let keys: Vec<Vec<u16>> = classes.iter().map(|c| c.pieces().iter().map(pid).collect()).collect();
    let index: HashMap<Vec<u16>, u32> = keys.iter().enumerate().map(|(i, k)| (k.clone(), i as u32)).collect();
    let cc = caps.components as usize;
    let annulus = Piece::new(0, 2);
    let collars: Vec<Option<u32>> = (0..=cc)
        .map(|k| if k == 0 || !caps.admits_piece(&annulus) { None } else { Some(index[&vec![pid(&annulus); k]]) })
        .collect();

    let mut squares: HashSet<[u32; 4]> = HashSet::new();
    let mut buf = Vec::with_capacity(2 * cc);
    let n = classes.len();
    for i in 1..n {
        for j in i..n {
            if keys[i].len() + keys[j].len() > cc {
                continue;
            }
            merge_into(&mut buf, &[&keys[i], &keys[j]]);
            squares.insert([0, i as u32, j as u32, index[buf.as_slice()]]);
        }
    }
    let coproduct = squares.len();

    // multisets of pieces with boundary, as (key, class index)
    let open: Vec<usize> = (1..n).filter(|&i| keys[i].iter().all(|&p| pieces[p as usize].boundary > 0)).collect();
    // classes come ordered by size, so those with at most s pieces are a prefix
    let upto: Vec<usize> = (0..=cc).map(|s| keys.iter().take_while(|k| k.len() <= s).count()).collect();
    let mut skipped = 0usize;
    let mut b_key = Vec::with_capacity(cc);
    let mut c_key = Vec::with_capacity(cc);
    let mut d_key = Vec::with_capacity(cc);
    let mut core = Vec::with_capacity(2 * cc);
    for (x, &tb) in open.iter().enumerate() {
        let left = classes[tb].pieces();
        let rows: Vec<u32> = left.iter().map(|p| p.boundary).collect();
        for &tc in &open[x..] {
            let right = classes[tc].pieces();
            let cols: Vec<u32> = right.iter().map(|p| p.boundary).collect();
            for_each_covering(&rows, &cols, caps.components, &mut |m, k| {
                let Some(a) = collars[k as usize] else { return };
                glue_flat(left, right, m, &mut core);
                if !caps.admits(&core) {
                    skipped += 1;
                    return;
                }
                let core_key: Vec<u16> = core.iter().map(pid).collect();
                let room_b = cc - keys[tb].len();
                let room_c = cc - keys[tc].len();
                for rb in 0..upto[room_b.min(cc - core_key.len())] {
                    merge_into(&mut b_key, &[&keys[tb], &keys[rb]]);
                    let b = index[b_key.as_slice()];
                    let room_d = cc - core_key.len() - keys[rb].len();
                    for rc in 0..upto[room_c.min(room_d)] {
                        merge_into(&mut c_key, &[&keys[tc], &keys[rc]]);
                        merge_into(&mut d_key, &[&core_key, &keys[rb], &keys[rc]]);
                        let c = index[c_key.as_slice()];
                        let d = index[d_key.as_slice()];
                        squares.insert([a, b.min(c), b.max(c), d]);
                    }
                }
            });
        }
    }
    let collar = squares.len() - coproduct;
    debug!("mfd2 caps {caps}: {n} objects, {coproduct} coproduct squares, {collar} collar squares, {skipped} gluings beyond caps");

    let mut sq: Vec<[usize; 4]> = squares.into_iter().map(|s| s.map(|x| x as usize)).collect();
    sq.sort_unstable();
    let labels = classes.iter().map(label).collect();
    let presentation = SquaresPresentation::new(labels, 0, sq).expect("indices in range");
    Mfd2Instance { caps, classes, presentation, coproduct_squares: coproduct, collar_squares: collar, skipped }
}

/// K₀ of the truncated instance with coordinates of every class.
#[derive(Clone, Debug)]
pub struct Mfd2K0 {
    pub instance: Mfd2Instance,
    pub quotient: Quotient,
    pub invariants: GroupInvariants,
    pub coordinates: Vec<ElementCoords>,
}

impl Mfd2K0 {
    pub fn coords_of(&self, c: &DiffeoClass) -> Option<&ElementCoords> {
        self.instance.index_of(c).map(|i| &self.coordinates[i])
    }
}

pub fn k0_of_mfd2(caps: Caps) -> Mfd2K0 {
    let instance = mfd2_instance(caps);
    let quotient = k0_quotient(&instance.presentation);
    let invariants = quotient.invariants();
    let coordinates = (0..instance.classes.len()).map(|i| quotient.generator_coords(i)).collect();
    Mfd2K0 { instance, quotient, invariants, coordinates }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gluing_rules() {
        let d = Piece::new(0, 1);
        assert_eq!(glue_classes(&[d], &[d], &[vec![1]]), vec![Piece::new(0, 0)]);
        let a = Piece::new(0, 2);
        // annulus to annulus along both circles: torus
        assert_eq!(glue_classes(&[a], &[a], &[vec![2]]), vec![Piece::new(1, 0)]);
        // one circle between distinct components merges
        let g = glue_classes(&[Piece::new(1, 2)], &[Piece::new(2, 3)], &[vec![1]]);
        assert_eq!(g, vec![Piece::new(3, 3)]);
        // untouched pieces pass through
        let mut g = glue_classes(&[d, Piece::new(1, 0)], &[d], &[vec![1], vec![0]]);
        g.sort();
        assert_eq!(g, vec![Piece::new(0, 0), Piece::new(1, 0)]);
    }

    /// Pastes `circles` boundary circles of `a` to circles of `b`, concretely.
    fn paste_concretely(a: Piece, b: Piece, circles: usize) -> DiffeoClass {
        use crate::surface::{build_standard, disjoint_union, paste, BoundaryGluing};
        let mut s = disjoint_union(&build_standard(a.genus, a.boundary), &build_standard(b.genus, b.boundary));
        for _ in 0..circles {
            let comp = s.vertex_components();
            let cycles = s.boundary_cycles();
            let first = cycles.iter().position(|c| comp[c[0]] == comp[cycles[0][0]]).unwrap();
            let other = cycles.iter().position(|c| comp[c[0]] != comp[cycles[0][0]]);
            // after the first circle both sides share a component; glue the
            // next pair of circles coming from the two original pieces
            let second = other.unwrap_or(1);
            s = paste(&s, &BoundaryGluing::new(first, second, 0)).unwrap();
        }
        s.classify()
    }

    #[test]
    fn rules_match_concrete_paste() {
        for (a, b) in [((0, 1), (0, 1)), ((0, 2), (1, 1)), ((1, 2), (0, 3)), ((0, 2), (0, 2))] {
            let (a, b) = (Piece::new(a.0, a.1), Piece::new(b.0, b.1));
            let once = DiffeoClass::from_pieces(glue_classes(&[a], &[b], &[vec![1]]));
            assert_eq!(paste_concretely(a, b, 1), once, "{a} {b}");
        }
        let a = Piece::new(0, 2);
        let twice = DiffeoClass::from_pieces(glue_classes(&[a], &[a], &[vec![2]]));
        assert_eq!(twice.to_string(), "{(1,0)}");
        assert_eq!(paste_concretely(a, a, 2), twice);
        let (x, y) = (Piece::new(1, 2), Piece::new(0, 3));
        assert_eq!(paste_concretely(x, y, 2), DiffeoClass::from_pieces(glue_classes(&[x], &[y], &[vec![2]])));
    }

    #[test]
    fn matrix_enumeration() {
        let mut count = 0;
        for_each_gluing(&[1, 1], &[1, 1], true, 3, &mut |_, k| {
            assert_eq!(k, 2);
            count += 1;
        });
        assert_eq!(count, 2);
        let mut count = 0;
        for_each_gluing(&[2], &[2], false, 3, &mut |_, _| count += 1);
        assert_eq!(count, 2);
    }

    #[test]
    fn class_counts() {
        let caps = Caps::new(4, 3, 3);
        assert_eq!(caps.classes().len(), 1771);
        assert_eq!("2,2,2".parse::<Caps>().unwrap(), Caps::new(2, 2, 2));
        assert!("2,2".parse::<Caps>().is_err());
    }

    #[test]
    fn small_caps_give_rank_two() {
        let k = k0_of_mfd2(Caps::new(2, 2, 2));
        assert_eq!(k.invariants.to_string(), "Z^2");
    }
}
