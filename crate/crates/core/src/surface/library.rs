//! Explicit triangulations.

use super::complex::TriSurface;
use super::ops::glue_cycles;

/// Octahedron with poles 0 and 5 and equator 1-2-3-4.
pub fn octahedron() -> TriSurface {
    TriSurface::new(6, vec![[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 1], [5, 2, 1], [5, 3, 2], [5, 4, 3], [5, 1, 4]])
        .expect("octahedron is valid")
}

/// The 7-vertex torus: triangles `(i, i+1, i+3)` and `(i, i+3, i+2)` mod 7.
pub fn seven_vertex_torus() -> TriSurface {
    let mut tris = Vec::with_capacity(14);
    for i in 0..7 {
        tris.push([i, (i + 1) % 7, (i + 3) % 7]);
        tris.push([i, (i + 3) % 7, (i + 2) % 7]);
    }
    TriSurface::new(7, tris).expect("7-vertex torus is valid")
}

pub fn disk() -> TriSurface {
    TriSurface::new(3, vec![[0, 1, 2]]).expect("triangle")
}

pub fn annulus() -> TriSurface {
    build_standard(0, 2)
}

const RING: usize = 6;

/// Sphere with `holes` triangular holes with pairwise disjoint closures.
///
/// Stacked hexagonal rings between two poles; holes are cut from every
/// other band, two per band at opposite positions.
pub fn sphere_with_holes(holes: usize) -> TriSurface {
    let rings = (holes.div_ceil(2) * 2).max(1);
    let ring = |r: usize, i: usize| 1 + r * RING + i % RING;
    let south = 1 + rings * RING;
    let mut tris = Vec::new();
    for i in 0..RING {
        tris.push([0, ring(0, i), ring(0, i + 1)]);
    }
    let mut left = holes;
    for r in 0..rings - 1 {
        for i in 0..RING {
            tris.push([ring(r, i + 1), ring(r, i), ring(r + 1, i)]);
            let hole = r % 2 == 0 && (i == 0 || i == 3) && left > 0;
            if hole {
                left -= 1;
            } else {
                tris.push([ring(r + 1, i), ring(r + 1, i + 1), ring(r, i + 1)]);
            }
        }
    }
    for i in 0..RING {
        tris.push([south, ring(rings - 1, i + 1), ring(rings - 1, i)]);
    }
    assert_eq!(left, 0);
    TriSurface::new(south + 1, tris).expect("holed sphere is valid")
}

/// Connected surface of genus `g` with `b` boundary circles: a sphere with
/// `2g + b` holes whose first `2g` holes are glued in pairs.
pub fn build_standard(g: u32, b: u32) -> TriSurface {
    let mut s = sphere_with_holes((2 * g + b) as usize);
    for _ in 0..g {
        // gluing keeps the relative order of the untouched vertices, so the
        // first two cycles are always the next pair of holes
        let cycles = s.boundary_cycles();
        s = glue_cycles(&s, cycles[0].clone(), cycles[1].clone(), 0, &mut []).expect("hole pair glues");
    }
    s.canonicalize().0
}

/// Connected sum of two surfaces, through the first triangle of each whose
/// corners are all interior.
pub fn connected_sum(a: &TriSurface, b: &TriSurface) -> TriSurface {
    let punctured = |s: &TriSurface| {
        let boundary = s.boundary_vertices();
        let t = s
            .triangles()
            .iter()
            .position(|t| t.iter().all(|v| !boundary.contains(v)))
            .expect("surface has an interior triangle");
        let mut tris = s.triangles().to_vec();
        tris.remove(t);
        TriSurface::new(s.vertex_count(), tris).expect("removing an interior triangle")
    };
    let (pa, pb) = (punctured(a), punctured(b));
    let old_a: std::collections::BTreeSet<usize> = pa.boundary_vertices();
    let old_b: std::collections::BTreeSet<usize> = pb.boundary_vertices();
    let u = pa.raw_union(&pb);
    let shift = pa.vertex_count();
    let cycles = u.boundary_cycles();
    let new_a = cycles
        .iter()
        .find(|c| old_a.contains(&c[0]) && !a.boundary_vertices().contains(&c[0]))
        .expect("new hole in a")
        .clone();
    let new_b = cycles
        .iter()
        .find(|c| c[0] >= shift && old_b.contains(&(c[0] - shift)) && !b.boundary_vertices().contains(&(c[0] - shift)))
        .expect("new hole in b")
        .clone();
    glue_cycles(&u, new_a, new_b, 0, &mut []).expect("connected sum glues").canonicalize().0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures() {
        assert_eq!(octahedron().euler_characteristic(), 2);
        assert_eq!(octahedron().classify().to_string(), "{(0,0)}");
        assert_eq!(seven_vertex_torus().euler_characteristic(), 0);
        assert_eq!(seven_vertex_torus().classify().to_string(), "{(1,0)}");
        assert_eq!(disk().classify().to_string(), "{(0,1)}");
        assert_eq!(annulus().classify().to_string(), "{(0,2)}");
    }

    #[test]
    fn holed_spheres() {
        for h in 0..10 {
            let s = sphere_with_holes(h);
            assert_eq!(s.classify().to_string(), format!("{{(0,{h})}}"));
            assert!(s.boundary_cycles().iter().all(|c| c.len() == 3));
        }
    }

    #[test]
    fn standard_library_up_to_three() {
        for g in 0..=3 {
            for b in 0..=3 {
                let s = build_standard(g, b);
                assert_eq!(s.classify(), crate::surface::DiffeoClass::single(g, b));
            }
        }
    }

    #[test]
    fn connected_sums_add_genus() {
        let t = seven_vertex_torus();
        assert_eq!(connected_sum(&t, &t).classify().to_string(), "{(2,0)}");
        assert_eq!(connected_sum(&octahedron(), &t).classify().to_string(), "{(1,0)}");
        assert_eq!(connected_sum(&build_standard(1, 2), &t).classify().to_string(), "{(2,2)}");
    }
}
