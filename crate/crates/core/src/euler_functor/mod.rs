//! Simplicial chains of triangulated surfaces, their behaviour on
//! distinguished squares, and agreement with the Euler characteristic.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abgroup::IntMatrix;
use crate::chains::{homology, k0_class, pushout, ChainComplex, ChainError, ChainMap, HomologyType};
use crate::sk_groups::SkPresentation;
use crate::surface::{
    build_standard, candidate_circles, circle_signature, collared_reglue, double_circle, octahedron,
    seven_vertex_torus, EmbeddedCircle, Region, SurfaceError, TriSurface,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EulerError {
    #[error("map {map}: {reason}")]
    NotAnEmbedding { map: &'static str, reason: String },
    #[error("square does not commute at vertex {vertex} of A")]
    NotCommutative { vertex: usize },
    #[error("triangle {triangle} of D is not covered by B or C")]
    NotCovered { triangle: usize },
    #[error("B and C meet outside A: {what}")]
    ExtraIntersection { what: String },
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

fn min_first(t: [usize; 3]) -> [usize; 3] {
    let i = (0..3).min_by_key(|&i| t[i]).unwrap();
    [t[i], t[(i + 1) % 3], t[(i + 2) % 3]]
}

fn edge_index(s: &TriSurface) -> HashMap<(usize, usize), usize> {
    s.edges().into_iter().enumerate().map(|(i, e)| (e, i)).collect()
}

fn triangle_index(s: &TriSurface) -> HashMap<[usize; 3], usize> {
    s.triangles().iter().enumerate().map(|(i, &t)| (min_first(t), i)).collect()
}

fn signed(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Simplicial chains in degrees 0..=2. Edges are `edges()` oriented from the
/// smaller vertex; triangles carry their own orientation.
pub fn chains_of(s: &TriSurface) -> ChainComplex {
    let edges = s.edges();
    let eidx = edge_index(s);
    let (v, e, t) = (s.vertex_count(), edges.len(), s.triangles().len());
    let mut d1 = IntMatrix::zeros(v, e);
    for (j, &(a, b)) in edges.iter().enumerate() {
        d1.set(a, j, signed(-1));
        d1.set(b, j, signed(1));
    }
    let mut d2 = IntMatrix::zeros(e, t);
    for (j, tri) in s.triangles().iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (tri[k], tri[(k + 1) % 3]);
            let sign = if a < b { 1 } else { -1 };
            d2.set(eidx[&(a.min(b), a.max(b))], j, signed(sign));
        }
    }
    ChainComplex::new(0, vec![v, e, t], vec![d1, d2]).expect("simplicial boundary squares to zero")
}

/// Checks that `vmap` embeds `src` into `tgt` as an oriented subcomplex.
fn check_embedding(name: &'static str, src: &TriSurface, tgt: &TriSurface, vmap: &[usize]) -> Result<(), EulerError> {
    let fail = |reason: String| EulerError::NotAnEmbedding { map: name, reason };
    if vmap.len() != src.vertex_count() {
        return Err(fail(format!("{} entries for {} vertices", vmap.len(), src.vertex_count())));
    }
    let mut seen = HashSet::new();
    for (v, &w) in vmap.iter().enumerate() {
        if w >= tgt.vertex_count() {
            return Err(fail(format!("vertex {v} goes to {w}, out of range")));
        }
        if !seen.insert(w) {
            return Err(fail(format!("vertex {w} is hit twice")));
        }
    }
    let tidx = triangle_index(tgt);
    for (i, t) in src.triangles().iter().enumerate() {
        let image = min_first(t.map(|v| vmap[v]));
        if !tidx.contains_key(&image) {
            let flipped = min_first([image[0], image[2], image[1]]);
            let reason = if tidx.contains_key(&flipped) { "reverses orientation" } else { "is not a triangle" };
            return Err(fail(format!("image of triangle {i} {reason}")));
        }
    }
    Ok(())
}

/// Chain map induced by a simplicial embedding.
pub fn simplicial_map(src: &TriSurface, tgt: &TriSurface, vmap: &[usize]) -> Result<ChainMap, EulerError> {
    check_embedding("inclusion", src, tgt, vmap)?;
    let eidx = edge_index(tgt);
    let tidx = triangle_index(tgt);
    let src_edges = src.edges();
    let mut f0 = IntMatrix::zeros(tgt.vertex_count(), src.vertex_count());
    for (v, &w) in vmap.iter().enumerate() {
        f0.set(w, v, BigInt::one());
    }
    let mut f1 = IntMatrix::zeros(eidx.len(), src_edges.len());
    for (j, &(a, b)) in src_edges.iter().enumerate() {
        let (x, y) = (vmap[a], vmap[b]);
        f1.set(eidx[&(x.min(y), x.max(y))], j, signed(if x < y { 1 } else { -1 }));
    }
    let mut f2 = IntMatrix::zeros(tgt.triangles().len(), src.triangles().len());
    for (j, t) in src.triangles().iter().enumerate() {
        f2.set(tidx[&min_first(t.map(|v| vmap[v]))], j, BigInt::one());
    }
    Ok(ChainMap::new(chains_of(src), chains_of(tgt), vec![f0, f1, f2])?)
}

/// A pushout square of triangulated surfaces: `A` sits in `B` and `C`, and
/// `D` is covered by the images of `B` and `C`, which meet exactly in `A`.
/// Maps are vertex correspondences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareInstance {
    pub a: TriSurface,
    pub b: TriSurface,
    pub c: TriSurface,
    pub d: TriSurface,
    pub a_to_b: Vec<usize>,
    pub a_to_c: Vec<usize>,
    pub b_to_d: Vec<usize>,
    pub c_to_d: Vec<usize>,
}

type Simplices = (BTreeSet<usize>, BTreeSet<(usize, usize)>, BTreeSet<[usize; 3]>);

fn image_simplices(s: &TriSurface, vmap: &[usize]) -> Simplices {
    let verts = vmap.iter().copied().collect();
    let edges = s
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (vmap[a], vmap[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    let tris = s.triangles().iter().map(|t| min_first(t.map(|v| vmap[v]))).collect();
    (verts, edges, tris)
}

impl SquareInstance {
    /// `A = Ø`, `D = B ⊔ C`.
    pub fn coproduct(b: &TriSurface, c: &TriSurface) -> Self {
        let d = b.raw_union(c);
        let shift = b.vertex_count();
        SquareInstance {
            a: TriSurface::empty(),
            b: b.clone(),
            c: c.clone(),
            d,
            a_to_b: Vec::new(),
            a_to_c: Vec::new(),
            b_to_d: (0..b.vertex_count()).collect(),
            c_to_d: (0..c.vertex_count()).map(|v| v + shift).collect(),
        }
    }

    /// `B` = left part and collars, `C` = right part and collars, `A` = collars.
    fn from_regions(d: TriSurface, labels: &[Region]) -> Result<Self, EulerError> {
        let pick =
            |keep: &dyn Fn(Region) -> bool| -> Vec<usize> { (0..labels.len()).filter(|&i| keep(labels[i])).collect() };
        let (a, back_a) = d.sub_surface(&pick(&|r| r == Region::Collar)).map_err(SurfaceError::from)?;
        let (b, back_b) = d.sub_surface(&pick(&|r| r != Region::Right)).map_err(SurfaceError::from)?;
        let (c, back_c) = d.sub_surface(&pick(&|r| r != Region::Left)).map_err(SurfaceError::from)?;
        let into = |back: &[usize]| -> Vec<usize> {
            back_a.iter().map(|v| back.binary_search(v).expect("collar vertex lies in both sides")).collect()
        };
        let (a_to_b, a_to_c) = (into(&back_b), into(&back_c));
        Ok(SquareInstance { a, b, c, d, a_to_b, a_to_c, b_to_d: back_b, c_to_d: back_c })
    }

    /// Splits `d` along `circle` with a collar on each side. A circle that
    /// does not separate is first replaced by two parallel copies.
    pub fn along_circle(d: &TriSurface, circle: &EmbeddedCircle) -> Result<Self, EulerError> {
        if circle_signature(d, circle).separating {
            let (glued, labels) = collared_reglue(d, std::slice::from_ref(circle))?;
            return Self::from_regions(glued, &labels);
        }
        let (doubled, c1, c2) = double_circle(d, circle)?;
        let (glued, labels) = collared_reglue(&doubled, &[c1, c2])?;
        Self::from_regions(glued, &labels)
    }

    /// Checks embeddings, commutativity, covering and `B ∩ C = A`.
    pub fn check(&self) -> Result<(), EulerError> {
        check_embedding("A→B", &self.a, &self.b, &self.a_to_b)?;
        check_embedding("A→C", &self.a, &self.c, &self.a_to_c)?;
        check_embedding("B→D", &self.b, &self.d, &self.b_to_d)?;
        check_embedding("C→D", &self.c, &self.d, &self.c_to_d)?;
        for v in 0..self.a.vertex_count() {
            if self.b_to_d[self.a_to_b[v]] != self.c_to_d[self.a_to_c[v]] {
                return Err(EulerError::NotCommutative { vertex: v });
            }
        }
        let a_to_d: Vec<usize> = self.a_to_b.iter().map(|&v| self.b_to_d[v]).collect();
        let (bv, be, bt) = image_simplices(&self.b, &self.b_to_d);
        let (cv, ce, ct) = image_simplices(&self.c, &self.c_to_d);
        let (av, ae, at) = image_simplices(&self.a, &a_to_d);
        for (i, t) in self.d.triangles().iter().enumerate() {
            let t = min_first(*t);
            if !bt.contains(&t) && !ct.contains(&t) {
                return Err(EulerError::NotCovered { triangle: i });
            }
        }
        if let Some(v) = bv.intersection(&cv).find(|v| !av.contains(*v)) {
            return Err(EulerError::ExtraIntersection { what: format!("vertex {v}") });
        }
        if let Some(e) = be.intersection(&ce).find(|e| !ae.contains(*e)) {
            return Err(EulerError::ExtraIntersection { what: format!("edge {e:?}") });
        }
        if let Some(t) = bt.intersection(&ct).find(|t| !at.contains(*t)) {
            return Err(EulerError::ExtraIntersection { what: format!("triangle {t:?}") });
        }
        Ok(())
    }
}

/// Outcome of pushing a square through the chain functor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareReport {
    pub pushout: HomologyType,
    pub target: HomologyType,
    /// Whether the pushout is the strict quotient rather than a mapping cone.
    pub strict: bool,
    /// Least degree where the homology of the pushout and of `D` differ.
    pub first_mismatch: Option<i64>,
    /// `k0(A) + k0(P) = k0(B) + k0(C)`.
    pub additive: bool,
}

impl SquareReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none() && self.additive
    }
}

impl fmt::Display for SquareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pushout: {}", self.pushout)?;
        writeln!(f, "target: {}", self.target)?;
        writeln!(f, "strict: {}", self.strict)?;
        writeln!(f, "additive: {}", self.additive)?;
        match self.first_mismatch {
            None => write!(f, "PASS quasi-isomorphic"),
            Some(n) => write!(f, "FAIL homology differs in degree {n}"),
        }
    }
}

/// Chains of `A → B`, `A → C`, their pushout, and a comparison with the
/// chains of `D` by homology.
pub fn functor_on_square(q: &SquareInstance) -> Result<SquareReport, EulerError> {
    q.check()?;
    let f = simplicial_map(&q.a, &q.b, &q.a_to_b)?;
    let g = simplicial_map(&q.a, &q.c, &q.a_to_c)?;
    let p = pushout(&f, &g)?;
    let hp = homology(&p.complex);
    let hd = homology(&chains_of(&q.d));
    let degrees: BTreeSet<i64> = hp.groups.keys().chain(hd.groups.keys()).copied().collect();
    let first_mismatch = degrees.into_iter().find(|&n| hp.at(n) != hd.at(n));
    let additive = k0_class(f.source()) + hp.euler_characteristic() == k0_class(f.target()) + k0_class(g.target());
    Ok(SquareReport { pushout: hp, target: hd, strict: p.strict, first_mismatch, additive })
}

/// Class of a surface's chains in `K₀ ≅ Z`.
pub fn chain_class(s: &TriSurface) -> i64 {
    k0_class(&chains_of(s))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationLine {
    pub label: String,
    pub chain_side: i64,
    pub surface_side: i64,
}

impl CommutationLine {
    pub fn agrees(&self) -> bool {
        self.chain_side == self.surface_side
    }
}

/// For surfaces, chain class against Euler characteristic; for squares,
/// `k0(A) + k0(D)` against `χ(B) + χ(C)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommutationReport {
    pub lines: Vec<CommutationLine>,
}

impl CommutationReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(CommutationLine::agrees)
    }
}

impl fmt::Display for CommutationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            let tag = if l.agrees() { "PASS" } else { "FAIL" };
            writeln!(f, "{tag} {}: chains {} surface {}", l.label, l.chain_side, l.surface_side)?;
        }
        Ok(())
    }
}

pub fn pi0_commutation(surfaces: &[(String, TriSurface)], squares: &[SquareInstance]) -> CommutationReport {
    let mut lines: Vec<CommutationLine> = surfaces
        .iter()
        .map(|(label, s)| CommutationLine {
            label: label.clone(),
            chain_side: chain_class(s),
            surface_side: s.euler_characteristic(),
        })
        .collect();
    for (i, q) in squares.iter().enumerate() {
        lines.push(CommutationLine {
            label: format!("square {i}"),
            chain_side: chain_class(&q.a) + chain_class(&q.d),
            surface_side: q.b.euler_characteristic() + q.c.euler_characteristic(),
        });
    }
    CommutationReport { lines }
}

/// Whether `[s] ↦ k0(chains_of(s))` is a homomorphism out of an SK
/// presentation: every relation is killed, and generators with equal
/// coordinates get equal values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalityReport {
    pub values: Vec<i64>,
    pub failed_relation: Option<usize>,
    pub failed_pair: Option<(usize, usize)>,
}

impl NaturalityReport {
    pub fn passed(&self) -> bool {
        self.failed_relation.is_none() && self.failed_pair.is_none()
    }
}

pub fn factors_through_sk(pres: &SkPresentation) -> NaturalityReport {
    let values: Vec<i64> =
        pres.generators().iter().map(|p| chain_class(&build_standard(p.genus, p.boundary))).collect();
    let failed_relation = pres.presentation().relations().iter().position(|r| {
        let total: BigInt = r.iter().zip(&values).map(|(x, &v)| x * v).sum();
        !total.is_zero()
    });
    let coords: Vec<_> = (0..values.len()).map(|i| pres.quotient().generator_coords(i)).collect();
    let mut failed_pair = None;
    'outer: for i in 0..values.len() {
        for j in i + 1..values.len() {
            if coords[i] == coords[j] && values[i] != values[j] {
                failed_pair = Some((i, j));
                break 'outer;
            }
        }
    }
    NaturalityReport { values, failed_relation, failed_pair }
}

/// Surfaces squares are cut from.
pub fn square_sources() -> Vec<(String, TriSurface)> {
    let mut out = vec![("octahedron".to_string(), octahedron()), ("torus".to_string(), seven_vertex_torus())];
    for g in 0..=2 {
        for b in 0..=2 {
            out.push((format!("({g},{b})"), build_standard(g, b)));
        }
    }
    out
}

/// `count` squares from random circles in `square_sources()`, plus one
/// coproduct square for every tenth.
pub fn generate_squares(count: usize, seed: u64) -> Vec<SquareInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sources: Vec<(TriSurface, Vec<EmbeddedCircle>)> = square_sources()
        .into_iter()
        .map(|(_, s)| {
            let c = candidate_circles(&s);
            (s, c)
        })
        .filter(|(_, c)| !c.is_empty())
        .collect();
    let all = square_sources();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < 20 * count {
        attempts += 1;
        if out.len() % 10 == 9 {
            let b = &all.choose(&mut rng).expect("sources").1;
            let c = &all.choose(&mut rng).expect("sources").1;
            out.push(SquareInstance::coproduct(b, c));
            continue;
        }
        let (d, circles) = &sources[rng.gen_range(0..sources.len())];
        let circle = circles.choose(&mut rng).expect("nonempty");
        if let Ok(q) = SquareInstance::along_circle(d, circle) {
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::GroupInvariants;
    use crate::sk_groups::build_sk2_boundary;
    use crate::squares_k0::Caps;
    use crate::surface::{disk, paste, BoundaryGluing};

    fn free(r: usize) -> GroupInvariants {
        GroupInvariants { free_rank: r, torsion: Vec::new() }
    }

    #[test]
    fn octahedron_and_disk_chains() {
        let c = chains_of(&octahedron());
        assert_eq!(c.ranks(), &[6, 12, 8]);
        let h = homology(&c);
        assert_eq!((h.at(0), h.at(1), h.at(2)), (free(1), free(0), free(1)));
        let d = chains_of(&disk());
        assert_eq!(d.ranks(), &[3, 3, 1]);
        let h = homology(&d);
        assert_eq!((h.at(0), h.at(1), h.at(2)), (free(1), free(0), free(0)));
    }

    #[test]
    fn chain_class_is_euler_characteristic() {
        for g in 0..=3 {
            for b in 0..=3 {
                assert_eq!(chain_class(&build_standard(g, b)), 2 - 2 * g as i64 - b as i64);
            }
        }
        assert_eq!(chain_class(&TriSurface::empty()), 0);
    }

    #[test]
    fn equator_square_gives_the_sphere() {
        let s = octahedron();
        let equator = candidate_circles(&s).into_iter().find(|c| c.len() == 4).expect("square circle");
        let q = SquareInstance::along_circle(&s, &equator).unwrap();
        assert_eq!(q.b.classify().to_string(), "{(0,1)}");
        assert_eq!(q.c.classify().to_string(), "{(0,1)}");
        let r = functor_on_square(&q).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!((r.pushout.at(0), r.pushout.at(1), r.pushout.at(2)), (free(1), free(0), free(1)));
    }

    #[test]
    fn torus_from_two_annuli() {
        let t = seven_vertex_torus();
        let c = candidate_circles(&t).into_iter().find(|c| !circle_signature(&t, c).separating).unwrap();
        let q = SquareInstance::along_circle(&t, &c).unwrap();
        assert_eq!(q.a.classify().to_string(), "{(0,2),(0,2)}");
        assert_eq!(q.b.classify().to_string(), "{(0,2)}");
        assert_eq!(q.c.classify().to_string(), "{(0,2)}");
        let r = functor_on_square(&q).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!((r.target.at(0), r.target.at(1), r.target.at(2)), (free(1), free(2), free(1)));
    }

    #[test]
    fn coproduct_square_is_a_direct_sum() {
        let q = SquareInstance::coproduct(&octahedron(), &disk());
        let r = functor_on_square(&q).unwrap();
        assert!(r.passed() && r.strict);
        assert_eq!(r.pushout.at(0), free(2));
    }

    #[test]
    fn broken_squares_are_named() {
        let mut q = SquareInstance::along_circle(&octahedron(), &candidate_circles(&octahedron())[0]).unwrap();
        q.a_to_b.swap(0, 1);
        assert!(matches!(
            functor_on_square(&q),
            Err(EulerError::NotAnEmbedding { .. }) | Err(EulerError::NotCommutative { .. })
        ));
        let mut q = SquareInstance::coproduct(&disk(), &disk());
        q.c_to_d = q.b_to_d.clone();
        assert!(matches!(q.check(), Err(EulerError::NotCovered { .. }) | Err(EulerError::ExtraIntersection { .. })));
    }

    #[test]
    fn inclusions_are_injective_chain_maps() {
        let q = generate_squares(5, 3);
        for s in &q {
            for (src, tgt, m) in [(&s.b, &s.d, &s.b_to_d), (&s.c, &s.d, &s.c_to_d), (&s.a, &s.b, &s.a_to_b)] {
                assert!(simplicial_map(src, tgt, m).unwrap().is_levelwise_injective());
            }
        }
    }

    #[test]
    fn generated_squares_pass() {
        let qs = generate_squares(20, 7);
        assert_eq!(qs.len(), 20);
        for q in &qs {
            let r = functor_on_square(q).unwrap();
            assert!(r.passed(), "{r}");
        }
        let report = pi0_commutation(&square_sources(), &qs);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn pasted_disks_commute() {
        let two = disk().raw_union(&disk());
        let sphere = paste(&two, &BoundaryGluing::new(0, 1, 0)).unwrap();
        let r = pi0_commutation(&[("sphere".into(), sphere), ("empty".into(), TriSurface::empty())], &[]);
        assert!(r.passed());
        assert_eq!(r.lines[0].chain_side, 2);
        assert_eq!(r.lines[1].chain_side, 0);
    }

    #[test]
    fn chain_class_factors_through_sk() {
        let r = factors_through_sk(&build_sk2_boundary(Caps::new(2, 2, 2)));
        assert!(r.passed());
        assert_eq!(r.values.len(), 9);
    }
}
