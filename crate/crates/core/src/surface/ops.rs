use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::complex::{rotate_to, TriSurface};
use super::SurfaceError;

/// Simple closed edge path through interior vertices, as its cyclic vertex
/// sequence. The triangles containing the directed edges `v[i] → v[i+1]`
/// lie on its left.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EmbeddedCircle {
    vertices: Vec<usize>,
}

impl EmbeddedCircle {
    pub fn new(vertices: Vec<usize>) -> Self {
        EmbeddedCircle { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        EmbeddedCircle { vertices: v }
    }

    fn relabeled(&self, map: &[usize]) -> Self {
        EmbeddedCircle { vertices: self.vertices.iter().map(|&v| map[v]).collect() }
    }

    pub fn check(&self, s: &TriSurface) -> Result<(), SurfaceError> {
        let v = &self.vertices;
        if v.len() < 3 {
            return Err(SurfaceError::InvalidCircle("fewer than three vertices".into()));
        }
        if let Some(&x) = v.iter().find(|&&x| x >= s.vertex_count()) {
            return Err(SurfaceError::InvalidCircle(format!("vertex {x} out of range")));
        }
        if v.iter().collect::<BTreeSet<_>>().len() != v.len() {
            return Err(SurfaceError::InvalidCircle("repeated vertex".into()));
        }
        let edges = s.directed_edges();
        for i in 0..v.len() {
            let (a, b) = (v[i], v[(i + 1) % v.len()]);
            if !edges.contains_key(&(a, b)) && !edges.contains_key(&(b, a)) {
                return Err(SurfaceError::InvalidCircle(format!("no edge {a}-{b}")));
            }
        }
        let boundary = s.boundary_vertices();
        if let Some(&x) = v.iter().find(|x| boundary.contains(x)) {
            return Err(SurfaceError::CircleTouchesBoundary { vertex: x });
        }
        Ok(())
    }
}

/// A circle to cut along, either on its own or together with a parallel
/// copy so that the pair separates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CircleUnit {
    Single(EmbeddedCircle),
    Doubled(EmbeddedCircle),
}

impl CircleUnit {
    pub fn circle(&self) -> &EmbeddedCircle {
        match self {
            CircleUnit::Single(c) | CircleUnit::Doubled(c) => c,
        }
    }

    pub fn slots(&self) -> usize {
        match self {
            CircleUnit::Single(_) => 1,
            CircleUnit::Doubled(_) => 2,
        }
    }
}

/// Glue the left side of cut slot `left` to the right side of slot `right`,
/// rotated by `offset` steps from the alignment of both circles' first
/// vertices. `(i, i, 0)` undoes the cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CirclePairing {
    pub left: usize,
    pub right: usize,
    #[serde(default)]
    pub offset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Regluing {
    pub pairs: Vec<CirclePairing>,
}

impl Regluing {
    pub fn identity(slots: usize) -> Self {
        Regluing { pairs: (0..slots).map(|i| CirclePairing { left: i, right: i, offset: 0 }).collect() }
    }

    pub fn from_permutation(perm: &[usize]) -> Self {
        Regluing {
            pairs: perm.iter().enumerate().map(|(i, &j)| CirclePairing { left: i, right: j, offset: 0 }).collect(),
        }
    }
}

/// Identification of two boundary cycles of one surface, indices into
/// `boundary_cycles()`: `cycle_left[p]` meets `cycle_right[(offset - p) mod k]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryGluing {
    pub left: usize,
    pub right: usize,
    #[serde(default)]
    pub offset: usize,
    /// A matching that preserves the induced boundary orientations cannot
    /// produce an oriented surface.
    #[serde(default = "yes")]
    pub reverses_orientation: bool,
}

fn yes() -> bool {
    true
}

impl BoundaryGluing {
    pub fn new(left: usize, right: usize, offset: usize) -> Self {
        BoundaryGluing { left, right, offset, reverses_orientation: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CutSides {
    /// Index into `boundary_cycles()` of the cycle on the circle's left.
    pub left: usize,
    pub right: usize,
    /// Offset under which `paste` restores the original gluing.
    pub identity_offset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutRecord {
    pub sides: Vec<CutSides>,
}

impl CutRecord {
    pub fn identity_gluings(&self) -> Vec<BoundaryGluing> {
        self.sides.iter().map(|s| BoundaryGluing::new(s.left, s.right, s.identity_offset)).collect()
    }
}

/// Triangles around each vertex.
fn incidence(s: &TriSurface) -> Vec<Vec<usize>> {
    let mut inc = vec![Vec::new(); s.vertex_count()];
    for (i, t) in s.triangles().iter().enumerate() {
        for &v in t {
            inc[v].push(i);
        }
    }
    inc
}

/// Sides of one circle after a cut, as boundary-oriented vertex lists that
/// both start at a copy of the circle's first vertex.
#[derive(Clone, Debug)]
pub(crate) struct Sides {
    pub(crate) left: Vec<usize>,
    pub(crate) right: Vec<usize>,
}

/// Splits every circle vertex into a left copy (keeps its id) and a right
/// copy (new id). No validity check.
pub(crate) fn raw_cut(s: &TriSurface, c: &[usize]) -> (TriSurface, Sides) {
    let k = c.len();
    let n = s.vertex_count();
    let inc = incidence(s);
    let mut tris = s.triangles().to_vec();
    for i in 0..k {
        let (v, next, prev) = (c[i], c[(i + 1) % k], c[(i + k - 1) % k]);
        let star: HashMap<usize, (usize, usize)> = inc[v]
            .iter()
            .map(|&t| {
                let r = rotate_to(&s.triangles()[t], v);
                (r[1], (t, r[2]))
            })
            .collect();
        let mut left = HashSet::new();
        let mut a = next;
        for _ in 0..=star.len() {
            let (t, b) = star[&a];
            left.insert(t);
            if b == prev {
                break;
            }
            a = b;
        }
        for &t in &inc[v] {
            if !left.contains(&t) {
                let pos = s.triangles()[t].iter().position(|&x| x == v).unwrap();
                tris[t][pos] = n + i;
            }
        }
    }
    let left = c.to_vec();
    let right = std::iter::once(n).chain((1..k).rev().map(|i| n + i)).collect();
    (TriSurface::from_raw(n + k, tris), Sides { left, right })
}

/// Cut along `c` and join the two sides with an annulus. Returns `c` and its
/// parallel copy, the copy reversed so the annulus lies to the right of both.
fn raw_double(s: &TriSurface, c: &[usize]) -> (TriSurface, Vec<usize>, Vec<usize>) {
    let k = c.len();
    let n = s.vertex_count();
    let (cut, _) = raw_cut(s, c);
    let mut tris = cut.triangles().to_vec();
    for i in 0..k {
        let j = (i + 1) % k;
        tris.push([c[j], c[i], n + i]);
        tris.push([n + i, n + j, c[j]]);
    }
    let copy: Vec<usize> = (0..k).rev().map(|i| n + i).collect();
    (TriSurface::from_raw(n + k, tris), c.to_vec(), copy)
}

/// Adds an annulus along a boundary cycle; returns the new outer cycle,
/// aligned with the old one.
fn raw_collar(s: &TriSurface, c: &[usize]) -> (TriSurface, Vec<usize>) {
    let k = c.len();
    let n = s.vertex_count();
    let mut tris = s.triangles().to_vec();
    for j in 0..k {
        let j1 = (j + 1) % k;
        tris.push([c[j1], c[j], n + j]);
        tris.push([n + j, n + j1, c[j1]]);
    }
    (TriSurface::from_raw(n + k, tris), (n..n + k).collect())
}

/// Identifies `b[(off - p) mod k]` with `a[p]` and drops the ids of `b`.
/// Returns `None` when the quotient is not a valid triangulation.
fn try_identify(s: &TriSurface, a: &[usize], b: &[usize], off: usize) -> Option<(TriSurface, Vec<usize>)> {
    let k = a.len();
    let mut merge: Vec<usize> = (0..s.vertex_count()).collect();
    for (p, &x) in a.iter().enumerate() {
        merge[b[(off % k + k - p) % k]] = x;
    }
    let dropped: HashSet<usize> = b.iter().copied().collect();
    let mut compact = vec![usize::MAX; s.vertex_count()];
    let mut next = 0;
    for (v, slot) in compact.iter_mut().enumerate() {
        if !dropped.contains(&v) {
            *slot = next;
            next += 1;
        }
    }
    let map: Vec<usize> = (0..s.vertex_count()).map(|v| compact[merge[v]]).collect();
    let tris = s.triangles().iter().map(|t| t.map(|v| map[v])).collect();
    TriSurface::new(next, tris).ok().map(|t| (t, map))
}

/// Glues boundary cycle `b` onto `a` (both boundary-oriented). Falls back to
/// collaring both cycles when a direct identification would fold the
/// complex. Returns the old→new vertex map.
fn raw_paste(s: &TriSurface, a: &[usize], b: &[usize], off: usize) -> Result<(TriSurface, Vec<usize>), SurfaceError> {
    if let Some(done) = try_identify(s, a, b, off) {
        return Ok(done);
    }
    let (s1, a1) = raw_collar(s, a);
    let (s2, b1) = raw_collar(&s1, b);
    let (glued, map) =
        try_identify(&s2, &a1, &b1, off).ok_or_else(|| SurfaceError::InvalidCircle("collared gluing failed".into()))?;
    Ok((glued, map[..s.vertex_count()].to_vec()))
}

/// Subdivides boundary edges of `c` until it has `target` edges; `c[0]`
/// stays first.
fn raw_refine(s: &TriSurface, c: &[usize], target: usize) -> (TriSurface, Vec<usize>) {
    let mut tris = s.triangles().to_vec();
    let mut n = s.vertex_count();
    let mut cyc = c.to_vec();
    let mut p = 0;
    while cyc.len() < target {
        let (a, b) = (cyc[p], cyc[(p + 1) % cyc.len()]);
        let t = tris
            .iter()
            .position(|t| (0..3).any(|e| t[e] == a && t[(e + 1) % 3] == b))
            .expect("boundary edge lies in a triangle");
        let r = rotate_to(&tris[t], a);
        tris[t] = [a, n, r[2]];
        tris.push([n, b, r[2]]);
        cyc.insert(p + 1, n);
        n += 1;
        p = (p + 2) % cyc.len();
    }
    (TriSurface::from_raw(n, tris), cyc)
}

fn check_disjoint(circles: &[&EmbeddedCircle]) -> Result<(), SurfaceError> {
    let mut seen = HashSet::new();
    for c in circles {
        for &v in c.vertices() {
            if !seen.insert(v) {
                return Err(SurfaceError::InvalidCircle(format!("circles share vertex {v}")));
            }
        }
    }
    Ok(())
}

/// Cuts along all slots and checks that left sides and right sides lie in
/// disjoint sets of components.
fn raw_cut_system(s: &TriSurface, slots: &[Vec<usize>]) -> Result<(TriSurface, Vec<Sides>), SurfaceError> {
    let mut cur = s.clone();
    let mut sides = Vec::with_capacity(slots.len());
    for c in slots {
        let (next, side) = raw_cut(&cur, c);
        cur = next;
        sides.push(side);
    }
    let cur = TriSurface::new(cur.vertex_count(), cur.triangles().to_vec())?;
    let comp = cur.vertex_components();
    let lefts: HashSet<usize> = sides.iter().map(|sd| comp[sd.left[0]]).collect();
    for (i, sd) in sides.iter().enumerate() {
        if comp[sd.left[0]] == comp[sd.right[0]] || lefts.contains(&comp[sd.right[0]]) {
            return Err(SurfaceError::NonSeparating { circle: i });
        }
    }
    Ok((cur, sides))
}

/// Which part of a collared regluing a triangle came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Region {
    Left,
    Right,
    Collar,
}

/// Cuts along a separating system, puts a collar on both sides of every
/// circle and glues the collars back together. The result is the same
/// surface with an annulus around each circle; triangle labels come with it.
pub(crate) fn collared_reglue(
    s: &TriSurface,
    circles: &[EmbeddedCircle],
) -> Result<(TriSurface, Vec<Region>), SurfaceError> {
    for c in circles {
        c.check(s)?;
    }
    check_disjoint(&circles.iter().collect::<Vec<_>>())?;
    let slots: Vec<Vec<usize>> = circles.iter().map(|c| c.vertices().to_vec()).collect();
    let (mut cur, sides) = raw_cut_system(s, &slots)?;
    let comp = cur.vertex_components();
    let rights: HashSet<usize> = sides.iter().map(|sd| comp[sd.right[0]]).collect();
    let mut labels: Vec<Region> = cur
        .triangles()
        .iter()
        .map(|t| if rights.contains(&comp[t[0]]) { Region::Right } else { Region::Left })
        .collect();
    let mut pending: Vec<Vec<usize>> = sides.into_iter().flat_map(|sd| [sd.left, sd.right]).collect();
    for j in 0..circles.len() {
        let (s1, a) = raw_collar(&cur, &pending[2 * j]);
        let (s2, b) = raw_collar(&s1, &pending[2 * j + 1]);
        labels.resize(s2.triangles().len(), Region::Collar);
        let (glued, map) =
            try_identify(&s2, &a, &b, 0).ok_or_else(|| SurfaceError::InvalidCircle("collared gluing failed".into()))?;
        for c in pending.iter_mut().skip(2 * j + 2) {
            for v in c.iter_mut() {
                *v = map[*v];
            }
        }
        cur = glued;
    }
    Ok((cur, labels))
}

fn cycle_index(cycles: &[Vec<usize>], v: usize) -> (usize, usize) {
    cycles
        .iter()
        .enumerate()
        .find_map(|(i, c)| c.iter().position(|&x| x == v).map(|p| (i, p)))
        .expect("vertex on a boundary cycle")
}

/// Cuts along one circle.
pub fn cut(s: &TriSurface, c: &EmbeddedCircle) -> Result<(TriSurface, CutRecord), SurfaceError> {
    cut_system(s, std::slice::from_ref(c))
}

/// Cuts along disjoint circles whose left sides and right sides end up in
/// different components.
pub fn cut_system(s: &TriSurface, circles: &[EmbeddedCircle]) -> Result<(TriSurface, CutRecord), SurfaceError> {
    for c in circles {
        c.check(s)?;
    }
    check_disjoint(&circles.iter().collect::<Vec<_>>())?;
    let slots: Vec<Vec<usize>> = circles.iter().map(|c| c.vertices().to_vec()).collect();
    let (raw, sides) = raw_cut_system(s, &slots)?;
    let (canon, map) = raw.canonicalize();
    let cycles = canon.boundary_cycles();
    let record = CutRecord {
        sides: sides
            .iter()
            .map(|sd| {
                let k = sd.left.len();
                let (l, sl) = cycle_index(&cycles, map[sd.left[0]]);
                let (r, sr) = cycle_index(&cycles, map[sd.right[0]]);
                CutSides { left: l, right: r, identity_offset: (2 * k - sl - sr) % k }
            })
            .collect(),
    };
    Ok((canon, record))
}

/// Replaces `c` by two parallel circles bounding an annulus; the second is
/// oriented so that the annulus lies to the right of both, making the pair a
/// separating system.
pub fn double_circle(
    s: &TriSurface,
    c: &EmbeddedCircle,
) -> Result<(TriSurface, EmbeddedCircle, EmbeddedCircle), SurfaceError> {
    c.check(s)?;
    let (raw, c1, c2) = raw_double(s, c.vertices());
    let raw = TriSurface::new(raw.vertex_count(), raw.triangles().to_vec())?;
    let (canon, map) = raw.canonicalize();
    Ok((canon, EmbeddedCircle::new(c1).relabeled(&map), EmbeddedCircle::new(c2).relabeled(&map)))
}

pub fn disjoint_union(a: &TriSurface, b: &TriSurface) -> TriSurface {
    a.raw_union(b).canonicalize().0
}

pub(crate) fn glue_cycles(
    s: &TriSurface,
    a: Vec<usize>,
    b: Vec<usize>,
    off: usize,
    pending: &mut [Vec<usize>],
) -> Result<TriSurface, SurfaceError> {
    let (mut cur, mut a, mut b) = (s.clone(), a, b);
    if a.len() < b.len() {
        (cur, a) = raw_refine(&cur, &a, b.len());
    } else if b.len() < a.len() {
        (cur, b) = raw_refine(&cur, &b, a.len());
    }
    let (glued, map) = raw_paste(&cur, &a, &b, off)?;
    for c in pending.iter_mut() {
        for v in c.iter_mut() {
            *v = map[*v];
        }
    }
    Ok(glued)
}

pub fn paste(s: &TriSurface, g: &BoundaryGluing) -> Result<TriSurface, SurfaceError> {
    let cycles = s.boundary_cycles();
    let a = cycles.get(g.left).ok_or(SurfaceError::NoSuchCycle { index: g.left })?;
    let b = cycles.get(g.right).ok_or(SurfaceError::NoSuchCycle { index: g.right })?;
    if g.left == g.right {
        return Err(SurfaceError::SameCycle);
    }
    if a.len() != b.len() {
        return Err(SurfaceError::LengthMismatch { left: a.len(), right: b.len() });
    }
    if !g.reverses_orientation {
        return Err(SurfaceError::OrientationClash);
    }
    let glued = glue_cycles(s, a.clone(), b.clone(), g.offset, &mut [])?;
    Ok(glued.canonicalize().0)
}

pub fn refine_boundary(s: &TriSurface, cycle: usize, target: usize) -> Result<TriSurface, SurfaceError> {
    let cycles = s.boundary_cycles();
    let c = cycles.get(cycle).ok_or(SurfaceError::NoSuchCycle { index: cycle })?;
    if target < c.len() {
        return Err(SurfaceError::Shrinking { current: c.len(), target });
    }
    if target == c.len() {
        return Ok(s.clone());
    }
    Ok(raw_refine(s, c, target).0.canonicalize().0)
}

/// Cuts along the units (doubling where asked), then glues left sides to
/// right sides as the regluing says. Slots are numbered through the units in
/// order, a doubled unit taking two.
pub fn sk_move(s: &TriSurface, units: &[CircleUnit], regluing: &Regluing) -> Result<TriSurface, SurfaceError> {
    for u in units {
        u.circle().check(s)?;
    }
    check_disjoint(&units.iter().map(CircleUnit::circle).collect::<Vec<_>>())?;
    let mut cur = s.clone();
    let mut slots = Vec::new();
    for u in units {
        match u {
            CircleUnit::Single(c) => slots.push(c.vertices().to_vec()),
            CircleUnit::Doubled(c) => {
                let (next, c1, c2) = raw_double(&cur, c.vertices());
                cur = next;
                slots.push(c1);
                slots.push(c2);
            }
        }
    }
    let k = slots.len();
    let mut lefts = vec![false; k];
    let mut rights = vec![false; k];
    for p in &regluing.pairs {
        if p.left >= k || p.right >= k || std::mem::replace(&mut lefts[p.left], true) {
            return Err(SurfaceError::BadRegluing);
        }
        if std::mem::replace(&mut rights[p.right], true) {
            return Err(SurfaceError::BadRegluing);
        }
    }
    if regluing.pairs.len() != k {
        return Err(SurfaceError::BadRegluing);
    }
    let (mut cur, sides) = raw_cut_system(&cur, &slots)?;
    // pending cycles: all lefts then all rights
    let mut pending: Vec<Vec<usize>> = sides.iter().map(|sd| sd.left.clone()).collect();
    pending.extend(sides.iter().map(|sd| sd.right.clone()));
    for p in &regluing.pairs {
        let a = std::mem::take(&mut pending[p.left]);
        let b = std::mem::take(&mut pending[k + p.right]);
        cur = glue_cycles(&cur, a, b, p.offset, &mut pending)?;
    }
    Ok(cur.canonicalize().0)
}

#[cfg(test)]
mod tests {
    use super::super::{build_standard, disk, octahedron, seven_vertex_torus, DiffeoClass, Piece};
    use super::*;

    fn class(s: &TriSurface) -> String {
        s.classify().to_string()
    }

    fn equator() -> EmbeddedCircle {
        // octahedron: poles 0 and 5, equator 1-2-3-4
        EmbeddedCircle::new(vec![1, 2, 3, 4])
    }

    #[test]
    fn octahedron_equator_cut_gives_two_disks() {
        let (cut_s, rec) = cut(&octahedron(), &equator()).unwrap();
        assert_eq!(class(&cut_s), "{(0,1),(0,1)}");
        assert_eq!(rec.sides.len(), 1);
        let back = paste(&cut_s, &rec.identity_gluings()[0]).unwrap();
        assert_eq!(class(&back), "{(0,0)}");
        assert_eq!(back.triangles().len(), 8);
    }

    #[test]
    fn torus_face_cut_and_meridian() {
        let t = seven_vertex_torus();
        let face = EmbeddedCircle::new(t.triangles()[0].to_vec());
        let (c, _) = cut(&t, &face).unwrap();
        assert_eq!(c.classify(), DiffeoClass::from_pieces(vec![Piece::new(0, 1), Piece::new(1, 1)]));
        let meridian = super::super::circles::torus_meridian();
        assert!(matches!(cut(&t, &meridian), Err(SurfaceError::NonSeparating { .. })));
    }

    #[test]
    fn doubled_meridian_separates_into_annuli() {
        let t = seven_vertex_torus();
        let meridian = super::super::circles::torus_meridian();
        let (d, c1, c2) = double_circle(&t, &meridian).unwrap();
        assert_eq!(class(&d), "{(1,0)}");
        let (pieces, _) = cut_system(&d, &[c1, c2]).unwrap();
        assert_eq!(class(&pieces), "{(0,2),(0,2)}");
        assert_eq!(pieces.euler_characteristic(), 0);
    }

    #[test]
    fn doubled_equator_gives_disk_annulus_disk() {
        let (d, c1, c2) = double_circle(&octahedron(), &equator()).unwrap();
        let (pieces, _) = cut_system(&d, &[c1, c2]).unwrap();
        assert_eq!(class(&pieces), "{(0,1),(0,1),(0,2)}");
    }

    #[test]
    fn circle_on_boundary_is_rejected() {
        let d = disk();
        let c = EmbeddedCircle::new(vec![0, 1, 2]);
        assert!(matches!(cut(&d, &c), Err(SurfaceError::CircleTouchesBoundary { .. })));
    }

    #[test]
    fn annulus_self_glued_is_torus() {
        let a = build_standard(0, 2);
        let cycles = a.boundary_cycles();
        assert_eq!(cycles.len(), 2);
        let target = cycles[0].len().max(cycles[1].len());
        let a = refine_boundary(&a, 0, target).unwrap();
        let a = refine_boundary(&a, 1, target).unwrap();
        assert_eq!(class(&paste(&a, &BoundaryGluing::new(0, 1, 0)).unwrap()), "{(1,0)}");
    }

    #[test]
    fn paste_errors() {
        let two = disjoint_union(&disk(), &refine_boundary(&disk(), 0, 4).unwrap());
        assert!(matches!(paste(&two, &BoundaryGluing::new(0, 1, 0)), Err(SurfaceError::LengthMismatch { .. })));
        let two = disjoint_union(&disk(), &disk());
        let mut g = BoundaryGluing::new(0, 1, 0);
        g.reverses_orientation = false;
        assert!(matches!(paste(&two, &g), Err(SurfaceError::OrientationClash)));
        assert_eq!(class(&paste(&two, &BoundaryGluing::new(0, 1, 1)).unwrap()), "{(0,0)}");
    }

    #[test]
    fn refine_keeps_class() {
        let d = refine_boundary(&disk(), 0, 4).unwrap();
        assert_eq!(d.boundary_cycles()[0].len(), 4);
        assert_eq!(class(&d), "{(0,1)}");
        assert_eq!(d.euler_characteristic(), 1);
        assert_eq!(refine_boundary(&d, 0, 4).unwrap(), d);
        assert!(matches!(refine_boundary(&d, 0, 3), Err(SurfaceError::Shrinking { .. })));
    }

    #[test]
    fn twisted_regluing_of_genus_two() {
        let g2 = super::super::connected_sum(&build_standard(1, 0), &build_standard(1, 0));
        let neck = super::super::circles::connected_sum_neck(&g2);
        for off in 0..neck.len() {
            let r = Regluing { pairs: vec![CirclePairing { left: 0, right: 0, offset: off }] };
            let moved = sk_move(&g2, &[CircleUnit::Single(neck.clone())], &r).unwrap();
            assert_eq!(class(&moved), "{(2,0)}");
        }
    }
}
