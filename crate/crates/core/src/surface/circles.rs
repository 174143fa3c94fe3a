//! Short circles to cut along.

use std::collections::BTreeSet;

use serde::Serialize;

use super::complex::TriSurface;
use super::ops::{raw_cut, EmbeddedCircle};
use super::Piece;

/// What cutting along a circle does to its component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CircleSignature {
    pub component: usize,
    pub separating: bool,
    /// Piece on each side; equal when the circle does not separate.
    pub left: Piece,
    pub right: Piece,
}

/// All triangles of the 1-skeleton through interior vertices (faces
/// included), then links of interior vertices whose link avoids the
/// boundary.
pub fn candidate_circles(s: &TriSurface) -> Vec<EmbeddedCircle> {
    let boundary = s.boundary_vertices();
    let interior = |v: &usize| !boundary.contains(v);
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); s.vertex_count()];
    for (a, b) in s.edges() {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    let mut out = Vec::new();
    for a in (0..s.vertex_count()).filter(interior) {
        for &b in adj[a].range(a + 1..).filter(|v| interior(v)) {
            for &c in adj[b].range(b + 1..).filter(|v| interior(v)) {
                if adj[a].contains(&c) {
                    out.push(EmbeddedCircle::new(vec![a, b, c]));
                }
            }
        }
    }
    for v in (0..s.vertex_count()).filter(interior) {
        if let Some(link) = s.interior_link(v) {
            if link.iter().all(interior) {
                out.push(EmbeddedCircle::new(link));
            }
        }
    }
    out
}

/// Cuts along `c` and reports the resulting pieces. `c` must be valid.
pub fn circle_signature(s: &TriSurface, c: &EmbeddedCircle) -> CircleSignature {
    let component = s.vertex_components()[c.vertices()[0]];
    let (raw, sides) = raw_cut(s, c.vertices());
    let cut = TriSurface::new(raw.vertex_count(), raw.triangles().to_vec()).expect("cut along a valid circle");
    let comp = cut.vertex_components();
    let pieces = cut.component_pieces();
    let (l, r) = (comp[sides.left[0]], comp[sides.right[0]]);
    CircleSignature { component, separating: l != r, left: pieces[l], right: pieces[r] }
}

#[cfg(test)]
pub(crate) fn torus_meridian() -> EmbeddedCircle {
    let t = super::seven_vertex_torus();
    candidate_circles(&t).into_iter().find(|c| !circle_signature(&t, c).separating).unwrap()
}

#[cfg(test)]
pub(crate) fn connected_sum_neck(s: &TriSurface) -> EmbeddedCircle {
    candidate_circles(s)
        .into_iter()
        .find(|c| {
            let sig = circle_signature(s, c);
            sig.separating && sig.left.genus > 0 && sig.right.genus > 0
        })
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::super::{octahedron, seven_vertex_torus};
    use super::*;

    #[test]
    fn octahedron_circles_all_separate() {
        let s = octahedron();
        let c = candidate_circles(&s);
        assert!(!c.is_empty());
        assert!(c.iter().all(|c| circle_signature(&s, c).separating));
    }

    #[test]
    fn torus_has_both_kinds() {
        let t = seven_vertex_torus();
        let sigs: Vec<_> = candidate_circles(&t).iter().map(|c| circle_signature(&t, c)).collect();
        assert!(sigs.iter().any(|s| s.separating));
        assert!(sigs.iter().any(|s| !s.separating && s.left == Piece::new(0, 2)));
    }
}
