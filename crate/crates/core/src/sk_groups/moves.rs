//! Deciding scissors congruence, and concrete cut-and-paste certificates.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use log::debug;
use serde::{Deserialize, Serialize};

use super::{build_sk2_boundary, invariant_registry, SkClass, SkError, SkPresentation};
use crate::squares_k0::Caps;
use crate::surface::{
    build_standard, candidate_circles, circle_signature, glue_cycles, sk_move, CircleUnit, DiffeoClass, Piece,
    Regluing, SurfaceError, TriSurface,
};

/// Outcome of comparing two surfaces in SK₂^∂.
#[derive(Clone, Debug, Serialize)]
pub struct Decision {
    pub equivalent: bool,
    pub caps: Caps,
    pub left: DiffeoClass,
    pub right: DiffeoClass,
    pub left_class: SkClass,
    pub right_class: SkClass,
    /// `(name, value on left, value on right)` for every registered invariant.
    pub invariants: Vec<(String, i64, i64)>,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", if self.equivalent { "yes" } else { "no" })?;
        writeln!(f, "classes: {} vs {}", self.left, self.right)?;
        for (name, a, b) in &self.invariants {
            let mark = if a == b { "=" } else { "≠" };
            writeln!(f, "{name}: {a} {mark} {b}")?;
        }
        let show = |c: &SkClass| c.coords.free.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        write!(f, "coordinates at caps {}: [{}] vs [{}]", self.caps, show(&self.left_class), show(&self.right_class))
    }
}

/// Smallest caps at least (2,2,2) that hold every piece of both classes.
fn caps_for(a: &DiffeoClass, b: &DiffeoClass) -> Caps {
    let pieces = a.pieces().iter().chain(b.pieces());
    let (g, bd) = pieces.fold((2, 2), |(g, bd), p| (g.max(p.genus), bd.max(p.boundary)));
    Caps::new(g, bd, 2)
}

/// Compares SK₂^∂ coordinates of the two classes; the invariant values
/// are reported alongside.
pub fn decide_equivalent(m: &TriSurface, n: &TriSurface) -> Decision {
    let (left, right) = (m.classify(), n.classify());
    let caps = caps_for(&left, &right);
    let pres = build_sk2_boundary(caps);
    let left_class = pres.class_of(&left).expect("caps cover both classes");
    let right_class = pres.class_of(&right).expect("caps cover both classes");
    let invariants =
        invariant_registry().iter().map(|i| (i.name().to_string(), i.evaluate(&left), i.evaluate(&right))).collect();
    Decision {
        equivalent: left_class.coords == right_class.coords,
        caps,
        left,
        right,
        left_class,
        right_class,
        invariants,
    }
}

/// One cut-and-paste: cut along the units, reglue as given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveStep {
    pub units: Vec<CircleUnit>,
    pub regluing: Regluing,
    pub class_after: DiffeoClass,
}

/// Steps to replay from `start`, whose vertex labels they refer to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveWitness {
    pub start: TriSurface,
    pub steps: Vec<MoveStep>,
}

impl MoveWitness {
    /// Surfaces after each step, checking that every step lands in the
    /// recorded class with Euler characteristic and boundary unchanged.
    pub fn replay(&self) -> Result<Vec<TriSurface>, SkError> {
        let mut cur = self.start.clone();
        let (chi, b) = (cur.euler_characteristic(), cur.classify().boundary_circles());
        let mut out = Vec::new();
        for step in &self.steps {
            cur = sk_move(&cur, &step.units, &step.regluing)?;
            let class = cur.classify();
            if class != step.class_after || cur.euler_characteristic() != chi || class.boundary_circles() != b {
                return Err(SkError::Surface(SurfaceError::InvalidCircle(format!(
                    "replay reached {class}, expected {}",
                    step.class_after
                ))));
            }
            out.push(cur.clone());
        }
        Ok(out)
    }

    pub fn end_class(&self) -> DiffeoClass {
        self.steps.last().map_or_else(|| self.start.classify(), |s| s.class_after.clone())
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSearch {
    Found(MoveWitness),
    /// No sequence within the budget among the moves tried; says nothing
    /// about equivalence.
    Exhausted {
        states: usize,
    },
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Circles with pairwise different cut signatures, separating ones taken
/// singly and the others doubled; systems of one or two of them with every
/// non-identity pairing of the cut sides.
pub fn candidate_moves(s: &TriSurface) -> Vec<(Vec<CircleUnit>, Regluing)> {
    let mut seen = HashSet::new();
    let mut units = Vec::new();
    for c in candidate_circles(s) {
        let sig = circle_signature(s, &c);
        if seen.insert(sig) {
            units.push(if sig.separating { CircleUnit::Single(c) } else { CircleUnit::Doubled(c) });
        }
    }
    let mut systems: Vec<Vec<CircleUnit>> = units.iter().map(|u| vec![u.clone()]).collect();
    for i in 0..units.len() {
        for j in i + 1..units.len() {
            let (a, b) = (units[i].circle().vertices(), units[j].circle().vertices());
            if a.iter().all(|v| !b.contains(v)) {
                systems.push(vec![units[i].clone(), units[j].clone()]);
            }
        }
    }
    let mut out = Vec::new();
    for sys in systems {
        let slots: usize = sys.iter().map(CircleUnit::slots).sum();
        for perm in permutations(slots) {
            if perm.iter().enumerate().all(|(i, &j)| i == j) {
                continue;
            }
            out.push((sys.clone(), Regluing::from_permutation(&perm)));
        }
    }
    out
}

/// Breadth-first search over cut-and-paste moves, at most `budget` of them,
/// from `m` to a surface of the same class as `n`. States are merged by class.
pub fn find_witness(m: &TriSurface, n: &TriSurface, budget: usize) -> WitnessSearch {
    let target = n.classify();
    let start = m.canonicalize().0;
    if start.classify() == target {
        return WitnessSearch::Found(MoveWitness { start, steps: Vec::new() });
    }
    let mut seen: HashSet<DiffeoClass> = HashSet::from([start.classify()]);
    let mut queue: VecDeque<(TriSurface, Vec<MoveStep>)> = VecDeque::from([(start.clone(), Vec::new())]);
    while let Some((s, path)) = queue.pop_front() {
        if path.len() >= budget {
            continue;
        }
        for (units, regluing) in candidate_moves(&s) {
            let Ok(next) = sk_move(&s, &units, &regluing) else { continue };
            let class_after = next.classify();
            if !seen.insert(class_after.clone()) {
                continue;
            }
            let mut steps = path.clone();
            steps.push(MoveStep { units, regluing, class_after: class_after.clone() });
            if class_after == target {
                debug!("witness after exploring {} classes", seen.len());
                return WitnessSearch::Found(MoveWitness { start, steps });
            }
            queue.push_back((next, steps));
        }
    }
    WitnessSearch::Exhausted { states: seen.len() }
}

/// Glues the given cycle pairs one after another; the cycles are vertex
/// lists of `s`.
fn glue_pairs(s: &TriSurface, pairs: &[(Vec<usize>, Vec<usize>, usize)]) -> Result<TriSurface, SurfaceError> {
    let mut pending: Vec<Vec<usize>> = pairs.iter().flat_map(|(a, b, _)| [a.clone(), b.clone()]).collect();
    let mut cur = s.clone();
    for (i, (_, _, off)) in pairs.iter().enumerate() {
        let a = std::mem::take(&mut pending[2 * i]);
        let b = std::mem::take(&mut pending[2 * i + 1]);
        cur = glue_cycles(&cur, a, b, *off, &mut pending)?;
    }
    Ok(cur.canonicalize().0)
}

/// `[M] − [N] = [DM] − [L]` with `DM = M ∪ M̄` and `L = N ∪ M̄`.
#[derive(Clone, Debug, Serialize)]
pub struct DoublingCertificate {
    pub double: DiffeoClass,
    pub other: DiffeoClass,
    pub lhs: SkClass,
    pub rhs: SkClass,
    pub holds: bool,
    /// Both `DM` and `L` are closed.
    pub closed: bool,
}

/// Doubles `m` along the identity of its boundary and glues `n` to `M̄`
/// matching boundary cycles in their canonical order, then compares
/// `[M] − [N]` with `[DM] − [L]` in `pres`.
pub fn doubling_witness(
    m: &TriSurface,
    n: &TriSurface,
    pres: &SkPresentation,
) -> Result<(TriSurface, TriSurface, DoublingCertificate), SkError> {
    let (cm, cn) = (m.boundary_cycles(), n.boundary_cycles());
    if cm.len() != cn.len() {
        return Err(SkError::BoundaryMismatch { left: cm.len() as u32, right: cn.len() as u32 });
    }
    let mirror = m.reversed();

    let shift = m.vertex_count();
    let u = TriSurface::new(shift + mirror.vertex_count(), {
        let mut t = m.triangles().to_vec();
        t.extend(mirror.triangles().iter().map(|t| t.map(|v| v + shift)));
        t
    })
    .map_err(SurfaceError::from)?;
    let mirror_cycles: Vec<Vec<usize>> = u.boundary_cycles().into_iter().filter(|c| c[0] >= shift).collect();
    let pairs: Vec<_> = cm
        .iter()
        .map(|c| {
            let b = mirror_cycles.iter().find(|b| b.contains(&(c[0] + shift))).expect("mirror cycle").clone();
            let off = b.iter().position(|&v| v == c[0] + shift).expect("on the cycle");
            (c.clone(), b, off)
        })
        .collect();
    let double = glue_pairs(&u, &pairs)?;

    let shift = n.vertex_count();
    let u = TriSurface::new(shift + mirror.vertex_count(), {
        let mut t = n.triangles().to_vec();
        t.extend(mirror.triangles().iter().map(|t| t.map(|v| v + shift)));
        t
    })
    .map_err(SurfaceError::from)?;
    let mirror_cycles: Vec<Vec<usize>> = u.boundary_cycles().into_iter().filter(|c| c[0] >= shift).collect();
    let pairs: Vec<_> = cn.iter().cloned().zip(mirror_cycles).map(|(a, b)| (a, b, 0)).collect();
    let other = glue_pairs(&u, &pairs)?;

    let (dc, oc) = (double.classify(), other.classify());
    let lhs = pres.difference(&m.classify(), &n.classify())?;
    let rhs = pres.difference(&dc, &oc)?;
    let cert = DoublingCertificate {
        holds: lhs.coords == rhs.coords,
        closed: dc.boundary_circles() == 0 && oc.boundary_circles() == 0,
        double: dc,
        other: oc,
        lhs,
        rhs,
    };
    Ok((double, other, cert))
}

/// Every doubling certificate for pairs of generators `(g, b)`, `(g', b)`
/// within caps.
#[derive(Clone, Debug, Serialize)]
pub struct DoublingSweep {
    /// Caps of the presentation the certificates are read in; its genus cap
    /// covers every double.
    pub caps: Caps,
    pub checked: usize,
    pub failures: Vec<(Piece, Piece)>,
}

impl DoublingSweep {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn doubling_sweep(caps: Caps) -> Result<DoublingSweep, SkError> {
    let wide = Caps::new((2 * caps.genus + caps.boundary).saturating_sub(1).max(caps.genus), caps.boundary, 2);
    let pres = build_sk2_boundary(wide);
    let pieces = caps.pieces();
    let surfaces: Vec<TriSurface> = pieces.iter().map(|p| build_standard(p.genus, p.boundary)).collect();
    let mut failures = Vec::new();
    let mut checked = 0;
    for (i, m) in pieces.iter().enumerate() {
        for (j, n) in pieces.iter().enumerate().filter(|(_, n)| n.boundary == m.boundary) {
            let (_, _, cert) = doubling_witness(&surfaces[i], &surfaces[j], &pres)?;
            checked += 1;
            if !(cert.holds && cert.closed) {
                failures.push((*m, *n));
            }
        }
    }
    Ok(DoublingSweep { caps: wide, checked, failures })
}

/// A gluing of one stack of cylinders onto another: top circle `i` meets
/// bottom circle `perm[i]`, rotated by `offsets[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkkPairing {
    pub perm: Vec<usize>,
    pub offsets: Vec<usize>,
}

impl SkkPairing {
    pub fn identity(k: usize) -> Self {
        SkkPairing { perm: (0..k).collect(), offsets: vec![0; k] }
    }

    /// Every permutation with every offset below `rotations`.
    pub fn all(k: usize, rotations: usize) -> Vec<SkkPairing> {
        let mut offsets: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..k {
            offsets = offsets
                .into_iter()
                .flat_map(|o| {
                    (0..rotations).map(move |r| {
                        let mut o = o.clone();
                        o.push(r);
                        o
                    })
                })
                .collect();
        }
        permutations(k)
            .into_iter()
            .flat_map(|perm| offsets.iter().map(move |o| SkkPairing { perm: perm.clone(), offsets: o.clone() }))
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SkkCertificate {
    pub circles: usize,
    pub phi_class: DiffeoClass,
    pub psi_class: DiffeoClass,
    pub difference: SkClass,
    pub vanishes: bool,
}

/// `Σ × I` for `k` circles glued to a second copy, concretely.
fn cylinder_gluing(k: usize, p: &SkkPairing) -> Result<TriSurface, SkError> {
    if p.perm.len() != k || p.offsets.len() != k || permutations(k).iter().all(|q| q != &p.perm) {
        return Err(SkError::Surface(SurfaceError::BadRegluing));
    }
    let annulus = build_standard(0, 2);
    let cycles = annulus.boundary_cycles();
    let size = annulus.vertex_count();
    let mut tris = Vec::new();
    for i in 0..2 * k {
        tris.extend(annulus.triangles().iter().map(|t| t.map(|v| v + i * size)));
    }
    let s = TriSurface::new(2 * k * size, tris).map_err(SurfaceError::from)?;
    let shifted = |i: usize, c: usize| cycles[c].iter().map(|v| v + i * size).collect::<Vec<_>>();
    let pairs: Vec<_> =
        (0..k).map(|i| (shifted(i, 1), shifted(k + p.perm[i], 0), p.offsets[i] % cycles[0].len())).collect();
    Ok(glue_pairs(&s, &pairs)?)
}

/// Glues two stacks of `k` cylinders along `phi` and along `psi` and
/// compares the results in `pres`.
pub fn skk_collapse_check(
    k: usize,
    phi: &SkkPairing,
    psi: &SkkPairing,
    pres: &SkPresentation,
) -> Result<SkkCertificate, SkError> {
    let a = cylinder_gluing(k, phi)?.classify();
    let b = cylinder_gluing(k, psi)?.classify();
    let difference = pres.difference(&a, &b)?;
    Ok(SkkCertificate { circles: k, vanishes: difference.coords.is_zero(), phi_class: a, psi_class: b, difference })
}

/// Per circle count: how many pairings were glued, how many classes came
/// out, and whether all of them agree in `pres`.
#[derive(Clone, Debug, Serialize)]
pub struct SkkSweep {
    pub rows: Vec<SkkSweepRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkkSweepRow {
    pub circles: usize,
    pub pairings: usize,
    pub classes: Vec<DiffeoClass>,
    pub vanishes: bool,
}

impl SkkSweep {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.vanishes)
    }
}

/// Every pairing of two stacks of up to `max_k` cylinders, all offsets along
/// the annulus boundary. Each pairing is glued once; all differences vanish
/// exactly when every result has the coordinates of the first.
pub fn skk_sweep(max_k: usize, pres: &SkPresentation) -> Result<SkkSweep, SkError> {
    let rotations = build_standard(0, 2).boundary_cycles()[0].len();
    let mut rows = Vec::new();
    for k in 1..=max_k {
        let pairings = SkkPairing::all(k, rotations);
        let mut classes: Vec<DiffeoClass> = Vec::new();
        let mut reference = None;
        let mut vanishes = true;
        for p in &pairings {
            let class = cylinder_gluing(k, p)?.classify();
            let coords = pres.class_of(&class)?.coords;
            match &reference {
                None => reference = Some(coords),
                Some(r) => vanishes &= *r == coords,
            }
            if !classes.contains(&class) {
                classes.push(class);
            }
        }
        rows.push(SkkSweepRow { circles: k, pairings: pairings.len(), classes, vanishes });
    }
    Ok(SkkSweep { rows })
}
