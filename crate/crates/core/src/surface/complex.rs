use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{DiffeoClass, Piece, Violation};

/// A directed triangle edge: triangle index and edge slot `e ∈ {0,1,2}`,
/// slot `e` running from corner `e` to corner `e+1`.
pub type HalfEdge = (usize, u8);

/// On-disk form of a triangulation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceData {
    pub vertices: usize,
    pub triangles: Vec<[usize; 3]>,
    #[serde(default)]
    pub gluing: Vec<[HalfEdge; 2]>,
}

/// Oriented triangulated compact surface, possibly with boundary.
///
/// Vertices are `0..vertex_count`; a triangle's cyclic order is its
/// orientation. Two triangles are glued along an edge exactly when they
/// contain the two opposite directed copies of it, so the gluing is implied
/// by the vertex labels. Values are always valid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriSurface {
    vertex_count: usize,
    triangles: Vec<[usize; 3]>,
}

pub(crate) fn half_edge(t: &[usize; 3], e: u8) -> (usize, usize) {
    let e = e as usize;
    (t[e], t[(e + 1) % 3])
}

/// Rotates a triangle so that `v` comes first.
pub(crate) fn rotate_to(t: &[usize; 3], v: usize) -> [usize; 3] {
    let i = t.iter().position(|&x| x == v).expect("vertex in triangle");
    [t[i], t[(i + 1) % 3], t[(i + 2) % 3]]
}

fn rotate_min_first(t: &[usize; 3]) -> [usize; 3] {
    let m = *t.iter().min().unwrap();
    rotate_to(t, m)
}

/// Checks every invariant of a triangulation, reporting the first failure.
pub fn validate(data: &SurfaceData) -> Result<(), Violation> {
    let n = data.vertices;
    for (i, t) in data.triangles.iter().enumerate() {
        if t.iter().any(|&v| v >= n) {
            return Err(Violation::VertexOutOfRange { triangle: i });
        }
        if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
            return Err(Violation::DegenerateTriangle { triangle: i });
        }
    }
    let mut used = vec![false; n];
    for t in &data.triangles {
        for &v in t {
            used[v] = true;
        }
    }
    if let Some(v) = used.iter().position(|u| !u) {
        return Err(Violation::IsolatedVertex { vertex: v });
    }

    // directed edges must be unique: a repeat means two triangles induce the
    // same orientation on a shared edge
    let mut directed: HashMap<(usize, usize), HalfEdge> = HashMap::new();
    for (i, t) in data.triangles.iter().enumerate() {
        for e in 0..3u8 {
            if let Some(prev) = directed.insert(half_edge(t, e), (i, e)) {
                return Err(Violation::OrientationClash { first: prev, second: (i, e) });
            }
        }
    }

    // explicit gluing list, when present, must be exactly the implied one
    if !data.gluing.is_empty() {
        let mut seen: BTreeSet<HalfEdge> = BTreeSet::new();
        for pair in &data.gluing {
            for &(t, e) in pair {
                if t >= data.triangles.len() || e > 2 {
                    return Err(Violation::BadHalfEdge { half_edge: (t, e) });
                }
                if !seen.insert((t, e)) {
                    return Err(Violation::GluedTwice { half_edge: (t, e) });
                }
            }
            let (a, b) = half_edge(&data.triangles[pair[0].0], pair[0].1);
            let (c, d) = half_edge(&data.triangles[pair[1].0], pair[1].1);
            if (a, b) == (c, d) {
                return Err(Violation::OrientationClash { first: pair[0], second: pair[1] });
            }
            if (a, b) != (d, c) {
                return Err(Violation::GluingMismatch { first: pair[0], second: pair[1] });
            }
        }
        for (&(a, b), &h) in &directed {
            if a < b {
                if let Some(&k) = directed.get(&(b, a)) {
                    if !seen.contains(&h) || !seen.contains(&k) {
                        return Err(Violation::SharedEdgeNotGlued { edge: (a, b) });
                    }
                }
            }
        }
    }

    // vertex links: directed link edges a→b for each corner (v, a, b)
    let mut link_next: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n];
    for t in &data.triangles {
        for k in 0..3 {
            link_next[t[k]].insert(t[(k + 1) % 3], t[(k + 2) % 3]);
        }
    }
    for (v, next) in link_next.iter().enumerate() {
        let incoming: BTreeSet<usize> = next.values().copied().collect();
        let starts: Vec<usize> = next.keys().copied().filter(|a| !incoming.contains(a)).collect();
        let start = match starts.len() {
            0 => *next.keys().next().unwrap(),
            1 => starts[0],
            _ => return Err(Violation::VertexLinkDisconnected { vertex: v }),
        };
        let mut steps = 0;
        let mut cur = start;
        while let Some(&nx) = next.get(&cur) {
            steps += 1;
            cur = nx;
            if cur == start {
                break;
            }
        }
        if steps != next.len() {
            return Err(Violation::VertexLinkDisconnected { vertex: v });
        }
    }
    Ok(())
}

impl TryFrom<SurfaceData> for TriSurface {
    type Error = Violation;

    fn try_from(data: SurfaceData) -> Result<Self, Self::Error> {
        validate(&data)?;
        Ok(TriSurface { vertex_count: data.vertices, triangles: data.triangles })
    }
}

impl From<&TriSurface> for SurfaceData {
    fn from(s: &TriSurface) -> Self {
        SurfaceData { vertices: s.vertex_count, triangles: s.triangles.clone(), gluing: s.gluing() }
    }
}

impl Serialize for TriSurface {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SurfaceData::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TriSurface {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let data = SurfaceData::deserialize(deserializer)?;
        TriSurface::try_from(data).map_err(serde::de::Error::custom)
    }
}

impl TriSurface {
    pub fn new(vertex_count: usize, triangles: Vec<[usize; 3]>) -> Result<Self, Violation> {
        Self::try_from(SurfaceData { vertices: vertex_count, triangles, gluing: Vec::new() })
    }

    pub fn empty() -> Self {
        TriSurface { vertex_count: 0, triangles: Vec::new() }
    }

    /// Unchecked; callers validate before handing the value out.
    pub(crate) fn from_raw(vertex_count: usize, triangles: Vec<[usize; 3]>) -> Self {
        TriSurface { vertex_count, triangles }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    /// Same complex with the opposite orientation.
    pub fn reversed(&self) -> TriSurface {
        TriSurface::from_raw(self.vertex_count, self.triangles.iter().map(|&[a, b, c]| [a, c, b]).collect())
    }

    pub(crate) fn directed_edges(&self) -> HashMap<(usize, usize), HalfEdge> {
        let mut m = HashMap::with_capacity(self.triangles.len() * 3);
        for (i, t) in self.triangles.iter().enumerate() {
            for e in 0..3u8 {
                m.insert(half_edge(t, e), (i, e));
            }
        }
        m
    }

    /// Glued half-edge pairs, sorted.
    pub fn gluing(&self) -> Vec<[HalfEdge; 2]> {
        let de = self.directed_edges();
        let mut out: Vec<[HalfEdge; 2]> = de
            .iter()
            .filter_map(|(&(a, b), &h)| {
                let k = *de.get(&(b, a))?;
                (h < k).then_some([h, k])
            })
            .collect();
        out.sort();
        out
    }

    /// Undirected edges `(min, max)`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let set: BTreeSet<(usize, usize)> = self
            .triangles
            .iter()
            .flat_map(|t| (0..3u8).map(move |e| half_edge(t, e)))
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        set.into_iter().collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges().len() as i64 + self.triangles.len() as i64
    }

    /// Unglued directed edges `a → b`, keyed by `a`.
    pub(crate) fn boundary_successor(&self) -> BTreeMap<usize, usize> {
        let de = self.directed_edges();
        de.keys().filter(|(a, b)| !de.contains_key(&(*b, *a))).map(|&(a, b)| (a, b)).collect()
    }

    pub fn boundary_vertices(&self) -> BTreeSet<usize> {
        self.boundary_successor().into_keys().collect()
    }

    /// Boundary cycles, each in boundary orientation starting at its least
    /// vertex; cycles sorted by that vertex.
    pub fn boundary_cycles(&self) -> Vec<Vec<usize>> {
        let succ = self.boundary_successor();
        let mut seen = BTreeSet::new();
        let mut cycles = Vec::new();
        for &start in succ.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut cyc = vec![start];
            seen.insert(start);
            let mut cur = succ[&start];
            while cur != start {
                seen.insert(cur);
                cyc.push(cur);
                cur = succ[&cur];
            }
            cycles.push(cyc);
        }
        cycles
    }

    /// Triangle indices per connected component, components ordered by their
    /// least triangle index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for t in &self.triangles {
            let a = find(&mut parent, t[0]);
            for &v in &t[1..] {
                let b = find(&mut parent, v);
                parent[b] = a;
            }
        }
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut order: Vec<usize> = Vec::new();
        for (i, t) in self.triangles.iter().enumerate() {
            let r = find(&mut parent, t[0]);
            if !by_root.contains_key(&r) {
                order.push(r);
            }
            by_root.entry(r).or_default().push(i);
        }
        order.into_iter().map(|r| by_root.remove(&r).unwrap()).collect()
    }

    /// Component index of every vertex.
    pub fn vertex_components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.vertex_count];
        for (ci, tris) in self.components().iter().enumerate() {
            for &t in tris {
                for &v in &self.triangles[t] {
                    comp[v] = ci;
                }
            }
        }
        comp
    }

    pub fn classify(&self) -> DiffeoClass {
        DiffeoClass::from_pieces(self.component_pieces())
    }

    /// Type of each component, in `components()` order.
    pub fn component_pieces(&self) -> Vec<Piece> {
        let comps = self.components();
        let vcomp = self.vertex_components();
        let mut pieces = Vec::with_capacity(comps.len());
        let cycles = self.boundary_cycles();
        for (ci, tris) in comps.iter().enumerate() {
            let verts: BTreeSet<usize> = tris.iter().flat_map(|&t| self.triangles[t]).collect();
            let edges: BTreeSet<(usize, usize)> = tris
                .iter()
                .flat_map(|&t| (0..3u8).map(move |e| half_edge(&self.triangles[t], e)))
                .map(|(a, b)| (a.min(b), a.max(b)))
                .collect();
            let chi = verts.len() as i64 - edges.len() as i64 + tris.len() as i64;
            let b = cycles.iter().filter(|c| vcomp[c[0]] == ci).count() as i64;
            let twice_genus = 2 - chi - b;
            // valid closed-up oriented surfaces always give an even, nonnegative value
            assert!(twice_genus >= 0 && twice_genus % 2 == 0, "invalid complex: 2-χ-b = {twice_genus}");
            pieces.push(Piece::new((twice_genus / 2) as u32, b as u32));
        }
        pieces
    }

    /// Link of `v` as a cyclic vertex sequence when `v` is interior.
    pub fn interior_link(&self, v: usize) -> Option<Vec<usize>> {
        let mut next = BTreeMap::new();
        for t in &self.triangles {
            if let Some(k) = t.iter().position(|&x| x == v) {
                next.insert(t[(k + 1) % 3], t[(k + 2) % 3]);
            }
        }
        let &start = next.keys().next()?;
        let mut cyc = vec![start];
        let mut cur = next[&start];
        while cur != start {
            cyc.push(cur);
            cur = *next.get(&cur)?;
        }
        Some(cyc)
    }

    /// Relabels vertices breadth-first from the least triangle of each
    /// component, then sorts triangles. Returns the old→new vertex map.
    pub fn canonicalize(&self) -> (TriSurface, Vec<usize>) {
        let rotated: Vec<[usize; 3]> = self.triangles.iter().map(rotate_min_first).collect();
        let mut order: Vec<usize> = (0..rotated.len()).collect();
        order.sort_by_key(|&i| rotated[i]);
        let de = self.directed_edges();
        let mut visited = vec![false; rotated.len()];
        let mut map = vec![usize::MAX; self.vertex_count];
        let mut next_label = 0;
        for &seed in &order {
            if visited[seed] {
                continue;
            }
            visited[seed] = true;
            let mut queue = VecDeque::from([seed]);
            while let Some(t) = queue.pop_front() {
                let tri = rotated[t];
                for &v in &tri {
                    if map[v] == usize::MAX {
                        map[v] = next_label;
                        next_label += 1;
                    }
                }
                for e in 0..3u8 {
                    let (a, b) = half_edge(&tri, e);
                    if let Some(&(nb, _)) = de.get(&(b, a)) {
                        if !visited[nb] {
                            visited[nb] = true;
                            queue.push_back(nb);
                        }
                    }
                }
            }
        }
        let mut tris: Vec<[usize; 3]> =
            self.triangles.iter().map(|t| rotate_min_first(&[map[t[0]], map[t[1]], map[t[2]]])).collect();
        tris.sort();
        (TriSurface { vertex_count: next_label, triangles: tris }, map)
    }

    /// Disjoint union; `other`'s vertices are shifted past `self`'s.
    pub(crate) fn raw_union(&self, other: &TriSurface) -> TriSurface {
        let shift = self.vertex_count;
        let mut tris = self.triangles.clone();
        tris.extend(other.triangles.iter().map(|t| [t[0] + shift, t[1] + shift, t[2] + shift]));
        TriSurface { vertex_count: self.vertex_count + other.vertex_count, triangles: tris }
    }

    /// Subsurface spanned by a set of triangles, vertices renumbered in
    /// increasing order. Returns the surface and the new→old vertex map.
    pub fn sub_surface(&self, tris: &[usize]) -> Result<(TriSurface, Vec<usize>), Violation> {
        let verts: BTreeSet<usize> = tris.iter().flat_map(|&t| self.triangles[t]).collect();
        let back: Vec<usize> = verts.into_iter().collect();
        let fwd: HashMap<usize, usize> = back.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let new_tris = tris.iter().map(|&t| self.triangles[t].map(|v| fwd[&v])).collect();
        Ok((TriSurface::new(back.len(), new_tris)?, back))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_triangle_is_a_disk() {
        let s = TriSurface::new(3, vec![[0, 1, 2]]).unwrap();
        assert_eq!(s.euler_characteristic(), 1);
        assert_eq!(s.boundary_cycles(), vec![vec![0, 1, 2]]);
        assert_eq!(s.classify().to_string(), "{(0,1)}");
    }

    #[test]
    fn inconsistent_orientation_is_reported() {
        let data = SurfaceData { vertices: 4, triangles: vec![[0, 1, 2], [0, 1, 3]], gluing: vec![[(0, 0), (1, 0)]] };
        assert!(matches!(validate(&data), Err(Violation::OrientationClash { .. })));
    }

    #[test]
    fn explicit_gluing_must_match() {
        let good = SurfaceData { vertices: 4, triangles: vec![[0, 1, 2], [1, 0, 3]], gluing: vec![[(0, 0), (1, 0)]] };
        assert!(validate(&good).is_ok());
        let wrong = SurfaceData { gluing: vec![[(0, 1), (1, 0)]], ..good.clone() };
        assert!(matches!(validate(&wrong), Err(Violation::GluingMismatch { .. })));
        let twice = SurfaceData { gluing: vec![[(0, 0), (1, 0)], [(0, 0), (1, 1)]], ..good };
        assert!(matches!(validate(&twice), Err(Violation::GluedTwice { .. })));
    }

    #[test]
    fn pinched_vertex_is_rejected() {
        // two triangles meeting only at vertex 0
        let err = TriSurface::new(5, vec![[0, 1, 2], [0, 3, 4]]).unwrap_err();
        assert_eq!(err, Violation::VertexLinkDisconnected { vertex: 0 });
    }

    #[test]
    fn unused_vertex_is_rejected() {
        assert_eq!(TriSurface::new(4, vec![[0, 1, 2]]).unwrap_err(), Violation::IsolatedVertex { vertex: 3 });
    }

    #[test]
    fn canonical_form_is_stable() {
        let s = TriSurface::new(4, vec![[3, 1, 2], [1, 3, 0]]).unwrap();
        let (c, _) = s.canonicalize();
        assert_eq!(c.canonicalize().0, c);
        assert_eq!(c.classify(), s.classify());
    }
}
