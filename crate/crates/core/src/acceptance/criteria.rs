use std::collections::HashMap;
use std::time::Duration;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::oracle::{bareiss_det, coset_count};
use super::Criterion;
use crate::abgroup::{quotient_invariants, smith_normal_form, IntMatrix, Quotient};
use crate::chains::k0_class;
use crate::euler_functor::{chains_of, functor_on_square, generate_squares};
use crate::sk_groups::{
    build_sk2_boundary, candidate_moves, decide_equivalent, doubling_sweep, find_witness, skk_sweep,
    verify_exact_sequence, WitnessSearch,
};
use crate::squares_k0::{k0_of_mfd2, k0_presentation, k0_quotient, Caps, SquaresPresentation};
use crate::surface::{
    build_standard, candidate_circles, circle_signature, connected_sum, cut, cut_system, disjoint_union, double_circle,
    octahedron, paste, seven_vertex_torus, sk_move, CircleUnit, DiffeoClass, Regluing, TriSurface,
};

fn rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

pub struct SmithCorrectness;

impl Criterion for SmithCorrectness {
    fn id(&self) -> usize {
        1
    }

    fn name(&self) -> &'static str {
        "snf"
    }

    fn budget(&self) -> Duration {
        Duration::from_secs(10)
    }

    fn run(&self, seed: u64) -> Result<String, String> {
        let mut rng = rng(seed, 1);
        let mut oracle_checks = 0;
        for case in 0..500 {
            let rows = rng.gen_range(1..=6);
            let cols = if rng.gen_bool(0.5) { rows } else { rng.gen_range(1..=6) };
            let density: f64 = rng.gen_range(0.2..=1.0);
            let entries: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| if rng.gen_bool(density) { rng.gen_range(-9..=9) } else { 0 }).collect())
                .collect();
            let a = IntMatrix::from_rows(&entries);
            let snf = smith_normal_form(&a);
            let dia = IntMatrix::diagonal(rows, cols, &snf.d);
            let uav = snf.u.mul(&a).and_then(|x| x.mul(&snf.v)).map_err(|e| e.to_string())?;
            ensure(uav == dia, || format!("case {case}: U·A·V is not diag(d) for {entries:?}"))?;
            for m in [&snf.u, &snf.v] {
                ensure(bareiss_det(&m.to_rows()).abs().is_one(), || format!("case {case}: transform not unimodular"))?;
            }
            for w in snf.d.windows(2) {
                let ok = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
                ensure(ok, || format!("case {case}: divisibility fails in {:?}", snf.d))?;
            }
            if rows == cols {
                let big = a.to_rows();
                let det = bareiss_det(&big).abs();
                if !det.is_zero() && det <= BigInt::from(200) {
                    let columns: Vec<Vec<BigInt>> = (0..cols).map(|j| a.column(j)).collect();
                    let order = Quotient::new(rows, &columns).invariants().order();
                    let cosets = coset_count(&big).map(BigInt::from);
                    ensure(order == cosets, || format!("case {case}: order {order:?} vs {cosets:?} cosets"))?;
                    oracle_checks += 1;
                }
            }
        }
        Ok(format!("500 matrices, {oracle_checks} checked against coset enumeration"))
    }
}

pub struct SurfaceCalculus;

fn boundary_profile(c: &DiffeoClass) -> (i64, Vec<u32>) {
    let mut b: Vec<u32> = c.pieces().iter().map(|p| p.boundary).collect();
    b.sort_unstable();
    (c.euler_characteristic(), b)
}

impl Criterion for SurfaceCalculus {
    fn id(&self) -> usize {
        2
    }

    fn name(&self) -> &'static str {
        "surface"
    }

    fn budget(&self) -> Duration {
        Duration::from_secs(30)
    }

    fn run(&self, seed: u64) -> Result<String, String> {
        let mut generators = Vec::new();
        for g in 0..=3 {
            for b in 0..=3 {
                let s = build_standard(g, b);
                ensure(s.classify() == DiffeoClass::single(g, b), || {
                    format!("({g},{b}) classifies as {}", s.classify())
                })?;
                ensure(s.euler_characteristic() == 2 - 2 * g as i64 - b as i64, || format!("χ of ({g},{b})"))?;
                generators.push(s);
            }
        }
        let mut rng = rng(seed, 2);
        let mut done = 0;
        let mut attempts = 0;
        while done < 200 {
            attempts += 1;
            if attempts > 2000 {
                return Err(format!("only {done} round trips found"));
            }
            let mut s = generators.choose(&mut rng).expect("generators").clone();
            if rng.gen_bool(0.3) {
                s = disjoint_union(&s, generators.choose(&mut rng).expect("generators"));
            }
            let circles = candidate_circles(&s);
            let Some(c) = circles.choose(&mut rng) else { continue };
            let before = s.classify();
            let (cut_surface, back, added) = if circle_signature(&s, c).separating {
                let (cut_surface, record) = cut(&s, c).map_err(|e| format!("cut: {e}"))?;
                let back = paste(&cut_surface, &record.identity_gluings()[0]).map_err(|e| format!("paste: {e}"))?;
                (cut_surface, back, 2)
            } else {
                let (doubled, c1, c2) = double_circle(&s, c).map_err(|e| format!("double: {e}"))?;
                let (cut_surface, _) = cut_system(&doubled, &[c1, c2]).map_err(|e| format!("cut: {e}"))?;
                let back = sk_move(&s, &[CircleUnit::Doubled(c.clone())], &Regluing::identity(2))
                    .map_err(|e| format!("reglue: {e}"))?;
                (cut_surface, back, 4)
            };
            let cut_class = cut_surface.classify();
            ensure(cut_class.euler_characteristic() == before.euler_characteristic(), || {
                format!("cutting {before} changed χ")
            })?;
            ensure(cut_class.boundary_circles() == before.boundary_circles() + added, || {
                format!("cutting {before} gave {cut_class}")
            })?;
            let after = back.classify();
            ensure(after == before && boundary_profile(&after) == boundary_profile(&before), || {
                format!("round trip took {before} to {after}")
            })?;
            done += 1;
        }
        Ok("16 generators, 200 cut/paste round trips".into())
    }
}

pub struct FigureTwo;

impl Criterion for FigureTwo {
    fn id(&self) -> usize {
        3
    }

    fn name(&self) -> &'static str {
        "figure-two"
    }

    fn budget(&self) -> Duration {
        Duration::from_secs(60)
    }

    fn run(&self, _seed: u64) -> Result<String, String> {
        let t = seven_vertex_torus();
        let m = disjoint_union(&connected_sum(&t, &t), &octahedron());
        let n = disjoint_union(&t, &t);
        let d = decide_equivalent(&m, &n);
        ensure(d.equivalent, || format!("decided not equivalent: {d}"))?;
        let WitnessSearch::Found(w) = find_witness(&m, &n, 6) else {
            return Err("no witness within 6 moves".into());
        };
        ensure(w.steps.len() <= 6, || format!("{} moves", w.steps.len()))?;
        w.replay().map_err(|e| format!("replay: {e}"))?;
        let end = w.end_class();
        ensure(end == n.classify(), || format!("witness ends in {end}"))?;
        let n = w.steps.len();
        Ok(format!("{} ⇒ {end} in {n} move{}, replayed", m.classify(), if n == 1 { "" } else { "s" }))
    }
}

pub struct K0Theorem;

impl Criterion for K0Theorem {
    fn id(&self) -> usize {
        4
    }

    fn name(&self) -> &'static str {
        "k0"
    }

    fn budget(&self) -> Duration {
        Duration::from_secs(60)
    }

    fn run(&self, _seed: u64) -> Result<String, String> {
        let mut squares = Vec::new();
        for caps in [Caps::new(2, 2, 2), Caps::new(3, 3, 3), Caps::new(4, 3, 3)] {
            let k = k0_of_mfd2(caps);
            ensure(k.invariants.free_rank == 2 && k.invariants.torsion.is_empty(), || {
                format!("caps {caps}: K₀ = {}", k.invariants)
            })?;
            let mut by_invariant: HashMap<(i64, u32), &Vec<BigInt>> = HashMap::new();
            let mut by_coords: HashMap<&Vec<BigInt>, (i64, u32)> = HashMap::new();
            for (c, coords) in k.instance.classes.iter().zip(&k.coordinates) {
                let key = (c.euler_characteristic(), c.boundary_circles());
                ensure(*by_invariant.entry(key).or_insert(&coords.free) == &coords.free, || {
                    format!("caps {caps}: {c} has (χ, b) = {key:?} but other coordinates")
                })?;
                ensure(*by_coords.entry(&coords.free).or_insert(key) == key, || {
                    format!("caps {caps}: {c} shares coordinates with a different (χ, b)")
                })?;
            }
            let sphere = k.coords_of(&DiffeoClass::single(0, 0)).ok_or("sphere missing")?;
            for g in 0..=caps.genus {
                let sg = k.coords_of(&DiffeoClass::single(g, 0)).ok_or("closed generator missing")?;
                let expect: Vec<BigInt> = sphere.free.iter().map(|x| x * (1 - g as i64)).collect();
                ensure(sg.free == expect, || format!("caps {caps}: [Σ_{g}] ≠ (1−{g})[S²]"))?;
            }
            squares.push(k.instance.presentation.squares().len());
        }
        Ok(format!("Z^2 at (2,2,2), (3,3,3), (4,3,3) from {squares:?} squares"))
    }
}

pub struct ExactSequence;

impl Criterion for ExactSequence {
    fn id(&self) -> usize {
        5
    }

    fn name(&self) -> &'static str {
        "exact"
    }

    fn budget(&self) -> Duration {
        Duration::from_secs(60)
    }

    fn run(&self, _seed: u64) -> Result<String, String> {
        let mut certificates = 0;
        for caps in [Caps::new(2, 2, 2), Caps::new(3, 3, 3)] {
            let r = verify_exact_sequence(caps);
            ensure(r.passed(), || format!("caps {caps}: sequence not exact"))?;
            let sweep = doubling_sweep(caps).map_err(|e| e.to_string())?;
            ensure(sweep.passed(), || format!("caps {caps}: doubling fails for {:?}", sweep.failures))?;
            certificates += sweep.checked;
        }
        Ok(format!("exact at (2,2,2) and (3,3,3), {certificates} doubling certificates"))
    }
}

pub struct ChainTheorems;

impl Criterion for ChainTheorems {
    fn id(&self) -> usize {
        6
    }

    fn name(&self) -> &'static str {
        "chains"
    }

    fn budget(&self) -> Duration {
        Duration::from_secs(60)
    }

    fn run(&self, seed: u64) -> Result<String, String> {
        let squares = generate_squares(60, seed);
        ensure(squares.len() >= 50, || format!("only {} squares generated", squares.len()))?;
        for (i, q) in squares.iter().enumerate() {
            let r = functor_on_square(q).map_err(|e| format!("square {i}: {e}"))?;
            ensure(r.passed(), || format!("square {i}: {r}"))?;
        }
        let agrees = |s: &TriSurface| k0_class(&chains_of(s)) == s.euler_characteristic();
        let mut generators = Vec::new();
        for g in 0..=3 {
            for b in 0..=3 {
                let s = build_standard(g, b);
                ensure(agrees(&s), || format!("generator ({g},{b})"))?;
                generators.push(s);
            }
        }
        let mut rng = rng(seed, 6);
        let mut moved = 0;
        for _ in 0..60 {
            let s = generators[..9].choose(&mut rng).expect("generators");
            let s = disjoint_union(s, generators[..9].choose(&mut rng).expect("generators"));
            let moves = candidate_moves(&s);
            let Some((units, regluing)) = moves.choose(&mut rng) else { continue };
            let Ok(next) = sk_move(&s, units, regluing) else { continue };
            ensure(agrees(&next), || format!("move output {}", next.classify()))?;
            moved += 1;
        }
        ensure(moved >= 30, || format!("only {moved} move outputs"))?;
        Ok(format!("{} squares quasi-isomorphic, 16 generators and {moved} move outputs match χ", squares.len()))
    }
}

pub struct SkkCollapse;

impl Criterion for SkkCollapse {
    fn id(&self) -> usize {
        7
    }

    fn name(&self) -> &'static str {
        "skk"
    }

    fn budget(&self) -> Duration {
        Duration::from_secs(10)
    }

    fn run(&self, _seed: u64) -> Result<String, String> {
        let pres = build_sk2_boundary(Caps::new(2, 2, 2));
        let sweep = skk_sweep(3, &pres).map_err(|e| e.to_string())?;
        let counts: Vec<usize> = sweep.rows.iter().map(|r| r.pairings).collect();
        ensure(sweep.passed(), || format!("difference nonzero for pairing counts {counts:?}"))?;
        Ok(format!("zero difference for all pairings, {counts:?} pairings at 1, 2, 3 circles"))
    }
}

pub struct PresentationSanity;

impl Criterion for PresentationSanity {
    fn id(&self) -> usize {
        8
    }

    fn name(&self) -> &'static str {
        "presentations"
    }

    fn budget(&self) -> Duration {
        Duration::from_secs(10)
    }

    fn run(&self, seed: u64) -> Result<String, String> {
        let mut rng = rng(seed, 8);
        for case in 0..100 {
            let n = rng.gen_range(1..=6);
            let objects: Vec<String> = (0..n).map(|i| format!("X{i}")).collect();
            let squares: Vec<[usize; 4]> =
                (0..rng.gen_range(0..=8)).map(|_| [0; 4].map(|_| rng.gen_range(0..n))).collect();
            let p = SquaresPresentation::new(objects.clone(), 0, squares.clone()).map_err(|e| e.to_string())?;
            let base = quotient_invariants(&k0_presentation(&p));
            ensure(k0_quotient(&p).invariants() == base, || format!("case {case}: sparse and dense disagree"))?;

            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let shaped = if rng.gen_bool(0.5) { [a, b, a, b] } else { [a, a, b, b] };
            let mut extra = squares.clone();
            extra.insert(rng.gen_range(0..=squares.len()), shaped);
            let with = SquaresPresentation::new(objects.clone(), 0, extra).map_err(|e| e.to_string())?;
            ensure(quotient_invariants(&k0_presentation(&with)) == base, || {
                format!("case {case}: square {shaped:?} changed {base}")
            })?;

            let mut shuffled = squares;
            shuffled.shuffle(&mut rng);
            let perm = SquaresPresentation::new(objects, 0, shuffled).map_err(|e| e.to_string())?;
            ensure(quotient_invariants(&k0_presentation(&perm)) == base, || {
                format!("case {case}: permuting squares changed {base}")
            })?;
        }
        Ok("100 presentations stable under identity squares and reordering".into())
    }
}
