use std::path::Path;

use serde::{Deserialize, Serialize};

use scissors_core::abgroup::{quotient_invariants, IntMatrix};
use scissors_core::acceptance::{criteria, criterion_by_name, run_criterion};
use scissors_core::chains::{euler_char, homology, pushout, quasi_iso_type_equal, ChainComplex, ChainMap};
use scissors_core::euler_functor::{
    chain_class, factors_through_sk, functor_on_square, generate_squares, pi0_commutation, square_sources,
    SquareInstance,
};
use scissors_core::sk_groups::{
    build_sk2_boundary, decide_equivalent, doubling_sweep, find_witness, invariant_by_name, invariant_registry,
    skk_sweep, verify_exact_sequence, WitnessSearch,
};
use scissors_core::squares_k0::{
    check_lemma_hypotheses, k0_of_mfd2, k0_presentation, FiniteSquaresCategory, SquaresPresentation,
};
use scissors_core::surface::{
    annulus, build_standard, cut, disjoint_union, disk, octahedron, paste, seven_vertex_torus, BoundaryGluing,
    DiffeoClass, EmbeddedCircle, TriSurface,
};

use crate::input::{domain, read_json, read_surface, write_json, CliError};
use crate::report::Report;
use crate::{AcceptArgs, ChainCmd, EulerCmd, K0Args, SkCmd, SurfaceCmd};

type Outcome = Result<Report, CliError>;

fn emit_json<T: Serialize>(r: Report, key: &str, value: &T, out: Option<&Path>) -> Outcome {
    Ok(match write_json(value, out)? {
        Some(text) => r.line(key, text),
        None => r.field("written", out.expect("written to a file").display()),
    })
}

fn emit_surface(r: Report, s: &TriSurface, out: Option<&Path>) -> Outcome {
    let r = r.field("class", s.classify());
    emit_json(r, "surface", s, out)
}

pub fn surface(cmd: SurfaceCmd) -> Outcome {
    match cmd {
        SurfaceCmd::Validate { file } => {
            let s = read_surface(&file)?;
            Ok(Report::new()
                .field("valid", true)
                .field("vertices", s.vertex_count())
                .field("edges", s.edges().len())
                .field("triangles", s.triangles().len()))
        }
        SurfaceCmd::Classify { file } => Ok(Report::new().field("class", read_surface(&file)?.classify())),
        SurfaceCmd::Chi { file } => Ok(Report::new().field("chi", read_surface(&file)?.euler_characteristic())),
        SurfaceCmd::Cut { file, circle, out } => {
            let s = read_surface(&file)?;
            let (cut_surface, record) = cut(&s, &EmbeddedCircle::new(circle)).map_err(domain)?;
            let side = record.sides[0];
            let r = Report::new()
                .field("left", side.left)
                .field("right", side.right)
                .field("identity_offset", side.identity_offset);
            emit_surface(r, &cut_surface, out.as_deref())
        }
        SurfaceCmd::Paste { file, left, right, offset, out } => {
            let s = read_surface(&file)?;
            let glued = paste(&s, &BoundaryGluing::new(left, right, offset)).map_err(domain)?;
            emit_surface(Report::new(), &glued, out.as_deref())
        }
        SurfaceCmd::Union { first, second, out } => {
            let u = disjoint_union(&read_surface(&first)?, &read_surface(&second)?);
            emit_surface(Report::new(), &u, out.as_deref())
        }
        SurfaceCmd::Build { genus, boundary, named, out } => {
            let s = match named.as_deref() {
                None => build_standard(genus, boundary),
                Some("octahedron") => octahedron(),
                Some("torus") => seven_vertex_torus(),
                Some("disk") => disk(),
                Some("annulus") => annulus(),
                Some(other) => return Err(CliError::Input(format!("unknown surface {other:?}"))),
            };
            emit_surface(Report::new(), &s, out.as_deref())
        }
    }
}

fn factors(d: &[String]) -> String {
    if d.is_empty() {
        "none".into()
    } else {
        d.join(",")
    }
}

pub fn sk(cmd: SkCmd) -> Outcome {
    match cmd {
        SkCmd::Decide { first, second } => {
            let d = decide_equivalent(&read_surface(&first)?, &read_surface(&second)?);
            Ok(Report::new().line("decision", d))
        }
        SkCmd::Witness { first, second, budget, out } => {
            let (m, n) = (read_surface(&first)?, read_surface(&second)?);
            let d = decide_equivalent(&m, &n);
            if !d.equivalent {
                return Ok(Report::new().check(
                    "witness",
                    false,
                    format!("no sequence exists: {} and {} differ in SK₂^∂", d.left, d.right),
                ));
            }
            match find_witness(&m, &n, budget) {
                WitnessSearch::Found(w) => {
                    w.replay().map_err(domain)?;
                    let mut r = Report::new().field("moves", w.steps.len());
                    for (i, step) in w.steps.iter().enumerate() {
                        r = r.field(&format!("step{}", i + 1), &step.class_after);
                    }
                    match out {
                        Some(p) => emit_json(r, "witness", &w, Some(&p)),
                        None => Ok(r),
                    }
                }
                WitnessSearch::Exhausted { states } => Ok(Report::new().check(
                    "witness",
                    false,
                    format!("none within {budget} moves, {states} classes explored"),
                )),
            }
        }
        SkCmd::Exact { caps } => {
            let r = verify_exact_sequence(caps);
            Ok(Report::new()
                .check(
                    "alpha",
                    r.alpha_injective,
                    format!("α injective: SK₂ = {} (torsion factors {})", r.sk2, factors(&r.sk2_certificate)),
                )
                .check(
                    "middle",
                    r.middle.exact() && r.composite_zero,
                    format!(
                        "exact at SK₂^∂ = {} (torsion factors {}), ker β / im α = {}",
                        r.sk2_boundary,
                        factors(&r.sk2_boundary_certificate),
                        r.middle.homology
                    ),
                )
                .check("beta", r.beta_surjective, format!("β surjective onto C₁ = {}", r.c1)))
        }
        SkCmd::K0 { caps } => {
            let k = k0_of_mfd2(caps);
            let coords = |c: DiffeoClass| k.coords_of(&c).map_or("-".to_string(), ToString::to_string);
            Ok(Report::new()
                .field("caps", caps)
                .field("objects", k.instance.classes.len())
                .field("coproduct_squares", k.instance.coproduct_squares)
                .field("collar_squares", k.instance.collar_squares)
                .field("skipped", k.instance.skipped)
                .field("group", &k.invariants)
                .field("sphere", coords(DiffeoClass::single(0, 0)))
                .field("disk", coords(DiffeoClass::single(0, 1))))
        }
        SkCmd::Skk { max_circles, caps } => {
            let sweep = skk_sweep(max_circles, &build_sk2_boundary(caps)).map_err(domain)?;
            let mut r = Report::new();
            for row in &sweep.rows {
                let classes: Vec<String> = row.classes.iter().map(ToString::to_string).collect();
                r = r.check(
                    &format!("circles{}", row.circles),
                    row.vanishes,
                    format!("{} circles, {} pairings, classes {}", row.circles, row.pairings, classes.join(" ")),
                );
            }
            Ok(r)
        }
        SkCmd::Double { caps } => {
            let sweep = doubling_sweep(caps).map_err(domain)?;
            let failures: Vec<String> = sweep.failures.iter().map(|(m, n)| format!("{m}/{n}")).collect();
            let detail = format!("{} certificates read at caps {}", sweep.checked, sweep.caps);
            let detail = if failures.is_empty() { detail } else { format!("{detail}, failing {}", failures.join(" ")) };
            Ok(Report::new().check("doubling", sweep.passed(), detail))
        }
        SkCmd::Invariants { file, invariant } => {
            let class = read_surface(&file)?.classify();
            let chosen = match invariant {
                None => invariant_registry(),
                Some(name) => {
                    vec![invariant_by_name(&name)
                        .ok_or_else(|| CliError::Input(format!("unknown invariant {name:?}")))?]
                }
            };
            Ok(chosen.iter().fold(Report::new(), |r, i| r.field(i.name(), i.evaluate(&class))))
        }
    }
}

pub fn k0(args: K0Args) -> Outcome {
    if args.hypotheses {
        let mut cat: FiniteSquaresCategory = read_json(&args.file)?;
        if args.complete {
            cat = cat.completed();
        }
        let report = check_lemma_hypotheses(&cat);
        let mut r = Report::new();
        for item in &report.items {
            let detail = match &item.witness {
                None => item.name.clone(),
                Some(w) => format!("{}: {w}", item.name),
            };
            r = r.check(&item.name.replace(' ', "_"), item.passed, detail);
        }
        if let Ok(p) = cat.to_presentation() {
            r = r.field("k0", quotient_invariants(&k0_presentation(&p)));
        }
        return Ok(r);
    }
    let p: SquaresPresentation = read_json(&args.file)?;
    Ok(Report::new().field("k0", quotient_invariants(&k0_presentation(&p))))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    lo: i64,
    hi: i64,
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl RawComplex {
    fn build(self) -> Result<ChainComplex, CliError> {
        if self.hi < self.lo || self.ranks.len() as i64 != self.hi - self.lo + 1 {
            return Err(CliError::Input(format!(
                "degrees {}..={} do not match {} ranks",
                self.lo,
                self.hi,
                self.ranks.len()
            )));
        }
        ChainComplex::new(self.lo, self.ranks, self.boundaries).map_err(domain)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    source: RawComplex,
    target: RawComplex,
    maps: Vec<IntMatrix>,
}

impl RawMap {
    fn build(self) -> Result<ChainMap, CliError> {
        ChainMap::new(self.source.build()?, self.target.build()?, self.maps).map_err(domain)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PushoutInput {
    f: RawMap,
    g: RawMap,
}

fn read_complex(path: &Path) -> Result<ChainComplex, CliError> {
    read_json::<RawComplex>(path)?.build()
}

fn homology_report(r: Report, c: &ChainComplex) -> Report {
    let h = homology(c);
    (c.lo()..=c.hi()).fold(r, |r, n| r.field(&format!("H{n}"), h.at(n)))
}

pub fn chain(cmd: ChainCmd) -> Outcome {
    match cmd {
        ChainCmd::Homology { file } => Ok(homology_report(Report::new(), &read_complex(&file)?)),
        ChainCmd::Chi { file } => {
            let c = read_complex(&file)?;
            let by_ranks = euler_char(&c);
            let by_homology = homology(&c).euler_characteristic();
            Ok(Report::new().field("chi", by_ranks).check(
                "homology",
                by_ranks == by_homology,
                format!("χ from homology = {by_homology}"),
            ))
        }
        ChainCmd::Pushout { file, out } => {
            let input: PushoutInput = read_json(&file)?;
            let (f, g) = (input.f.build()?, input.g.build()?);
            let p = pushout(&f, &g).map_err(domain)?;
            let r = homology_report(Report::new().field("strict", p.strict), &p.complex);
            emit_json(r, "complex", &p.complex, out.as_deref())
        }
        ChainCmd::Qiso { first, second } => {
            let (c, d) = (read_complex(&first)?, read_complex(&second)?);
            Ok(Report::new()
                .field("quasi_isomorphic", quasi_iso_type_equal(&c, &d))
                .field("first", homology(&c))
                .field("second", homology(&d)))
        }
    }
}

pub fn euler(cmd: EulerCmd, seed: u64) -> Outcome {
    match cmd {
        EulerCmd::Chi { file } => {
            let s = read_surface(&file)?;
            let (k, chi) = (chain_class(&s), s.euler_characteristic());
            Ok(Report::new().field("k0", k).check("chi", k == chi, format!("χ = {chi}")))
        }
        EulerCmd::VerifySquare { file } => {
            let q: SquareInstance = read_json(&file)?;
            let r = functor_on_square(&q).map_err(domain)?;
            let verdict = match r.first_mismatch {
                None => "pushout quasi-isomorphic to chains of D".to_string(),
                Some(n) => format!("homology differs in degree {n}"),
            };
            Ok(Report::new()
                .field("pushout", &r.pushout)
                .field("target", &r.target)
                .field("strict", r.strict)
                .check("additive", r.additive, "k0(A) + k0(D) = k0(B) + k0(C)")
                .check("square", r.first_mismatch.is_none(), verdict))
        }
        EulerCmd::Square { file, circle, out } => {
            let s = read_surface(&file)?;
            let q = SquareInstance::along_circle(&s, &EmbeddedCircle::new(circle)).map_err(domain)?;
            let r = Report::new()
                .field("a", q.a.classify())
                .field("b", q.b.classify())
                .field("c", q.c.classify())
                .field("d", q.d.classify());
            emit_json(r, "square", &q, out.as_deref())
        }
        EulerCmd::Commute { caps, squares } => {
            let mut surfaces: Vec<(String, TriSurface)> =
                caps.pieces().iter().map(|p| (p.to_string(), build_standard(p.genus, p.boundary))).collect();
            surfaces.extend(square_sources());
            surfaces.push(("empty".into(), TriSurface::empty()));
            let qs = generate_squares(squares, seed);
            let report = pi0_commutation(&surfaces, &qs);
            let (on_surfaces, on_squares) = report.lines.split_at(surfaces.len());
            let bad = |lines: &[scissors_core::euler_functor::CommutationLine]| -> Vec<String> {
                lines.iter().filter(|l| !l.agrees()).map(|l| l.label.clone()).collect()
            };
            let nat = factors_through_sk(&build_sk2_boundary(caps));
            Ok(Report::new()
                .check(
                    "surfaces",
                    bad(on_surfaces).is_empty(),
                    format!("{} surfaces, k0 = χ; failing {:?}", on_surfaces.len(), bad(on_surfaces)),
                )
                .check(
                    "squares",
                    bad(on_squares).is_empty(),
                    format!("{} squares, k0(A) + k0(D) = χ(B) + χ(C); failing {:?}", on_squares.len(), bad(on_squares)),
                )
                .check(
                    "sk",
                    nat.passed(),
                    format!("chain class kills every SK₂^∂ relation at caps {caps} (values {:?})", nat.values),
                ))
        }
    }
}

pub fn accept(args: AcceptArgs, seed: u64) -> Outcome {
    let chosen = if args.only.is_empty() {
        criteria()
    } else {
        args.only
            .iter()
            .map(|n| criterion_by_name(n).ok_or_else(|| CliError::Input(format!("unknown criterion {n:?}"))))
            .collect::<Result<_, _>>()?
    };
    let mut r = Report::new();
    for c in &chosen {
        let result = run_criterion(c.as_ref(), seed);
        r.ok &= result.passed();
        r = if args.timings { r.line(result.name, &result) } else { r.line(result.name, result.stable_line()) };
    }
    Ok(r)
}
