//! Scissors congruence groups of surfaces: SK₂, SK₂^∂ and C₁ on truncated
//! generator sets, the exact sequence relating them, invariants, and
//! cut-and-paste witnesses.

mod invariants;
mod moves;

use std::collections::{HashMap, HashSet};

use log::debug;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::abgroup::{
    exactness_at, AbGroupPresentation, AbHom, ElementCoords, ExactnessReport, GroupInvariants, IntMatrix, Quotient,
};
use crate::squares_k0::{for_each_covering, for_each_gluing, glue_flat, Caps};
use crate::surface::{DiffeoClass, Piece, SurfaceError};

pub use invariants::{
    invariant_by_name, invariant_registry, BoundaryCircles, EulerCharacteristic, Signature, SkInvariant,
};
pub use moves::{
    candidate_moves, decide_equivalent, doubling_sweep, doubling_witness, find_witness, skk_collapse_check, skk_sweep,
    Decision, DoublingCertificate, DoublingSweep, MoveStep, MoveWitness, SkkCertificate, SkkPairing, SkkSweep,
    SkkSweepRow, WitnessSearch,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SkError {
    #[error("piece {0} is outside the generators of this presentation")]
    CapMismatch(Piece),
    #[error("closed presentation cannot hold a piece with boundary: {0}")]
    NotClosed(Piece),
    #[error("boundaries differ: {left} and {right} circles")]
    BoundaryMismatch { left: u32, right: u32 },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    Closed,
    WithBoundary,
}

/// Free abelian group on connected classes within caps modulo the
/// regluing relations found among pieces within caps. Disjoint union is
/// built in: a class is the sum of its pieces.
#[derive(Clone, Debug)]
pub struct SkPresentation {
    flavor: Flavor,
    caps: Caps,
    generators: Vec<Piece>,
    presentation: AbGroupPresentation,
    quotient: Quotient,
    /// Gluings whose result left the caps.
    pub skipped: usize,
}

/// An element with its generator vector and reduced coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkClass {
    #[serde(with = "crate::abgroup::int_serde::vec")]
    pub vector: Vec<BigInt>,
    pub coords: ElementCoords,
}

impl SkPresentation {
    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn generators(&self) -> &[Piece] {
        &self.generators
    }

    pub fn presentation(&self) -> &AbGroupPresentation {
        &self.presentation
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    pub fn invariants(&self) -> GroupInvariants {
        self.quotient.invariants()
    }

    pub fn generator_index(&self, p: &Piece) -> Option<usize> {
        self.generators.iter().position(|g| g == p)
    }

    pub fn vector_of(&self, c: &DiffeoClass) -> Result<Vec<BigInt>, SkError> {
        let mut v = vec![BigInt::zero(); self.generators.len()];
        for p in c.pieces() {
            if self.flavor == Flavor::Closed && p.boundary > 0 {
                return Err(SkError::NotClosed(*p));
            }
            let i = self.generator_index(p).ok_or(SkError::CapMismatch(*p))?;
            v[i] += 1;
        }
        Ok(v)
    }

    pub fn element(&self, v: Vec<BigInt>) -> SkClass {
        let coords = self.quotient.normal_form(&v).expect("vector sized by generators");
        SkClass { vector: v, coords }
    }

    pub fn class_of(&self, c: &DiffeoClass) -> Result<SkClass, SkError> {
        Ok(self.element(self.vector_of(c)?))
    }

    /// `[a] − [b]`.
    pub fn difference(&self, a: &DiffeoClass, b: &DiffeoClass) -> Result<SkClass, SkError> {
        let v = self.vector_of(a)?.into_iter().zip(self.vector_of(b)?).map(|(x, y)| x - y).collect();
        Ok(self.element(v))
    }
}

struct RelationSink<'a> {
    index: &'a HashMap<Piece, usize>,
    seen: HashSet<Vec<(usize, i64)>>,
    rows: Vec<Vec<(usize, i64)>>,
    skipped: usize,
}

type Counts = Vec<(usize, i64)>;

impl RelationSink<'_> {
    fn counts(&self, pieces: &[Piece]) -> Option<Counts> {
        let mut ids = pieces.iter().map(|p| self.index.get(p).copied()).collect::<Option<Vec<usize>>>()?;
        ids.sort_unstable();
        let mut out: Counts = Vec::with_capacity(ids.len());
        for i in ids {
            match out.last_mut() {
                Some((j, x)) if *j == i => *x += 1,
                _ => out.push((i, 1)),
            }
        }
        Some(out)
    }

    /// Records `result − reference`, or makes `result` the reference.
    fn relate(&mut self, reference: &mut Option<Counts>, result: &[Piece]) {
        let Some(r) = self.counts(result) else {
            self.skipped += 1;
            return;
        };
        let Some(base) = reference else {
            *reference = Some(r);
            return;
        };
        let mut row = Vec::with_capacity(r.len() + base.len());
        let (mut x, mut y) = (r.iter().peekable(), base.iter().peekable());
        loop {
            let next = match (x.peek(), y.peek()) {
                (Some(&&(i, a)), Some(&&(j, b))) if i == j => {
                    x.next();
                    y.next();
                    (i, a - b)
                }
                (Some(&&(i, a)), Some(&&(j, _))) if i < j => {
                    x.next();
                    (i, a)
                }
                (Some(&&(i, a)), None) => {
                    x.next();
                    (i, a)
                }
                (_, Some(&&(j, b))) => {
                    y.next();
                    (j, -b)
                }
                (None, None) => break,
            };
            if next.1 != 0 {
                row.push(next);
            }
        }
        if !row.is_empty() && !self.seen.contains(&row) {
            self.seen.insert(row.clone());
            self.rows.push(row);
        }
    }
}

fn open_classes(caps: Caps) -> Vec<DiffeoClass> {
    caps.classes().into_iter().filter(|c| !c.is_empty() && c.pieces().iter().all(|p| p.boundary > 0)).collect()
}

fn finish(flavor: Flavor, caps: Caps, generators: Vec<Piece>, sink: RelationSink) -> SkPresentation {
    let n = generators.len();
    let relations: Vec<Vec<BigInt>> = sink
        .rows
        .iter()
        .map(|r| {
            let mut v = vec![BigInt::zero(); n];
            for &(i, x) in r {
                v[i] = BigInt::from(x);
            }
            v
        })
        .collect();
    let labels = generators.iter().map(Piece::to_string).collect();
    let presentation = AbGroupPresentation::new(labels, relations).expect("labels distinct");
    let quotient = presentation.quotient();
    debug!("{flavor:?} caps {caps}: {n} generators, {} relations, {} skipped", sink.rows.len(), sink.skipped);
    SkPresentation { flavor, caps, generators, presentation, quotient, skipped: sink.skipped }
}

/// SK₂ on closed surfaces of genus at most `caps.genus`. Relations: for
/// pieces `M₁`, `M₂` within caps and every two ways of gluing all of `∂M₁`
/// to all of `∂M₂`, the two closed results are equal.
pub fn build_sk2(caps: Caps) -> SkPresentation {
    let generators = caps.closed_pieces();
    let index: HashMap<Piece, usize> = generators.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut sink = RelationSink { index: &index, seen: HashSet::new(), rows: Vec::new(), skipped: 0 };
    let open = open_classes(caps);
    for (x, m1) in open.iter().enumerate() {
        let rows: Vec<u32> = m1.pieces().iter().map(|p| p.boundary).collect();
        for m2 in &open[x..] {
            let cols: Vec<u32> = m2.pieces().iter().map(|p| p.boundary).collect();
            let total: u32 = rows.iter().sum();
            if total != cols.iter().sum::<u32>() {
                continue;
            }
            let mut reference = None;
            let mut result = Vec::new();
            for_each_gluing(&rows, &cols, true, total, &mut |m, _| {
                glue_flat(m1.pieces(), m2.pieces(), m, &mut result);
                sink.relate(&mut reference, &result);
            });
        }
    }
    finish(Flavor::Closed, caps, generators, sink)
}

/// SK₂^∂ on connected classes within caps. Relations: for pieces `M₁`, `M₂`
/// within caps and a choice of how many circles of each piece to glue,
/// every two pairings of those circles give equal results.
pub fn build_sk2_boundary(caps: Caps) -> SkPresentation {
    let generators = caps.pieces();
    let index: HashMap<Piece, usize> = generators.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut sink = RelationSink { index: &index, seen: HashSet::new(), rows: Vec::new(), skipped: 0 };
    let open = open_classes(caps);
    for (x, m1) in open.iter().enumerate() {
        let rows: Vec<u32> = m1.pieces().iter().map(|p| p.boundary).collect();
        for m2 in &open[x..] {
            let cols: Vec<u32> = m2.pieces().iter().map(|p| p.boundary).collect();
            let q = cols.len();
            let kmax = rows.iter().sum::<u32>().min(cols.iter().sum());
            let mut references: HashMap<Vec<u32>, Option<Counts>> = HashMap::new();
            let mut margins = vec![0u32; rows.len() + q];
            let mut result = Vec::new();
            for_each_covering(&rows, &cols, kmax, &mut |m, _| {
                margins.iter_mut().for_each(|x| *x = 0);
                for (cell, &k) in m.iter().enumerate() {
                    margins[cell / q] += k;
                    margins[rows.len() + cell % q] += k;
                }
                glue_flat(m1.pieces(), m2.pieces(), m, &mut result);
                if !references.contains_key(margins.as_slice()) {
                    references.insert(margins.clone(), None);
                }
                let reference = references.get_mut(margins.as_slice()).expect("just inserted");
                sink.relate(reference, &result);
            });
        }
    }
    finish(Flavor::WithBoundary, caps, generators, sink)
}

/// C₁: closed oriented 1-manifolds up to cobordism-free counting, `Z` on `[S¹]`.
pub fn build_c1() -> AbGroupPresentation {
    AbGroupPresentation::free(["S1"]).expect("one generator")
}

/// `α: SK₂ → SK₂^∂`, `[M] ↦ [M]`.
pub fn alpha(closed: &SkPresentation, boundary: &SkPresentation) -> Result<AbHom, SkError> {
    let mut m = IntMatrix::zeros(boundary.generators.len(), closed.generators.len());
    for (j, p) in closed.generators.iter().enumerate() {
        let i = boundary.generator_index(p).ok_or(SkError::CapMismatch(*p))?;
        m.set(i, j, BigInt::from(1));
    }
    Ok(AbHom::new(closed.presentation.clone(), boundary.presentation.clone(), m)
        .expect("closed relations hold with boundary"))
}

/// `β: SK₂^∂ → C₁`, `[N] ↦ [∂N]`.
pub fn beta(boundary: &SkPresentation) -> AbHom {
    let mut m = IntMatrix::zeros(1, boundary.generators.len());
    for (j, p) in boundary.generators.iter().enumerate() {
        m.set(0, j, BigInt::from(p.boundary));
    }
    AbHom::new(boundary.presentation.clone(), build_c1(), m).expect("regluing keeps the boundary")
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactSequenceReport {
    pub caps: Caps,
    pub sk2: GroupInvariants,
    pub sk2_boundary: GroupInvariants,
    pub c1: GroupInvariants,
    pub alpha_injective: bool,
    pub beta_surjective: bool,
    pub middle: ExactnessReport,
    /// Image of every closed generator under `β∘α` is zero.
    pub composite_zero: bool,
    /// Reduced Smith diagonals of the SK₂ and SK₂^∂ relation blocks.
    pub sk2_certificate: Vec<String>,
    pub sk2_boundary_certificate: Vec<String>,
}

impl ExactSequenceReport {
    pub fn passed(&self) -> bool {
        self.alpha_injective && self.beta_surjective && self.middle.exact() && self.composite_zero
    }
}

/// `0 → SK₂ → SK₂^∂ → C₁ → 0` on the truncated presentations.
pub fn verify_exact_sequence(caps: Caps) -> ExactSequenceReport {
    let closed = build_sk2(caps);
    let boundary = build_sk2_boundary(caps);
    let a = alpha(&closed, &boundary).expect("same caps");
    let b = beta(&boundary);
    let middle = exactness_at(&a, &b).expect("composable");
    let composite_zero = (0..closed.generators.len()).all(|j| {
        let image = b.apply(&a.matrix().column(j)).expect("sizes");
        image.iter().all(Zero::is_zero)
    });
    let certificate = |p: &SkPresentation| p.quotient.reduced_smith().d.iter().map(BigInt::to_string).collect();
    ExactSequenceReport {
        caps,
        sk2: closed.invariants(),
        sk2_boundary: boundary.invariants(),
        c1: build_c1().quotient().invariants(),
        alpha_injective: a.is_injective(),
        beta_surjective: b.is_surjective(),
        middle,
        composite_zero,
        sk2_certificate: certificate(&closed),
        sk2_boundary_certificate: certificate(&boundary),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_group_is_z_with_sphere_multiples() {
        let sk = build_sk2(Caps::new(3, 3, 3));
        assert_eq!(sk.invariants().to_string(), "Z^1");
        let sphere = sk.class_of(&DiffeoClass::single(0, 0)).unwrap().coords.free;
        for g in 0..=3u32 {
            let c = sk.class_of(&DiffeoClass::single(g, 0)).unwrap().coords.free;
            let expected: Vec<BigInt> = sphere.iter().map(|x| x * (1 - i64::from(g))).collect();
            assert_eq!(c, expected, "genus {g}");
        }
    }

    #[test]
    fn boundary_group_has_rank_two() {
        for caps in [Caps::new(2, 2, 2), Caps::new(3, 3, 3)] {
            assert_eq!(build_sk2_boundary(caps).invariants().to_string(), "Z^2", "{caps}");
        }
    }

    #[test]
    fn exact_at_small_caps() {
        for caps in [Caps::new(2, 2, 2), Caps::new(3, 3, 3)] {
            let r = verify_exact_sequence(caps);
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn beta_of_disk_and_torus() {
        let caps = Caps::new(2, 2, 2);
        let (closed, boundary) = (build_sk2(caps), build_sk2_boundary(caps));
        let b = beta(&boundary);
        let disk = boundary.vector_of(&DiffeoClass::single(0, 1)).unwrap();
        assert_eq!(b.apply(&disk).unwrap(), vec![BigInt::from(1)]);
        let a = alpha(&closed, &boundary).unwrap();
        let torus = closed.vector_of(&DiffeoClass::single(1, 0)).unwrap();
        assert_eq!(b.apply(&a.apply(&torus).unwrap()).unwrap(), vec![BigInt::from(0)]);
        assert!(matches!(closed.vector_of(&DiffeoClass::single(0, 1)), Err(SkError::NotClosed(_))));
        assert!(matches!(boundary.vector_of(&DiffeoClass::single(5, 0)), Err(SkError::CapMismatch(_))));
    }
}
