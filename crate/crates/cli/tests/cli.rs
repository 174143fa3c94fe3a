use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scissors")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_octahedron() {
    let o = run(&["surface", "classify", path(&fixture("octahedron.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{(0,0)}\n");
}

#[test]
fn kv_output_keeps_keys() {
    let o = run(&["--format", "kv", "surface", "chi", path(&fixture("torus.json"))]);
    assert_eq!(stdout(&o), "chi=0\n");
}

#[test]
fn malformed_json_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"vertices\": 3, ").unwrap();
    let o = run(&["surface", "classify", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: "));
}

#[test]
fn invalid_triangulation_exits_one_and_names_it() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"vertices": 3, "triangles": [[0, 1, 1]], "gluing": []}"#).unwrap();
    let o = run(&["surface", "validate", path(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("invalid surface"), "{}", stderr(&o));
}

#[test]
fn unknown_subcommand_exits_two() {
    let o = run(&["surface", "explode"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exact_sequence_prints_three_passes() {
    let o = run(&["sk", "exact", "--caps", "2,2,2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|l| l.starts_with("PASS")), "{text}");
    assert!(lines[0].contains("SK₂ = Z^1"));
    assert!(lines[1].contains("SK₂^∂ = Z^2"));
}

#[test]
fn two_object_presentation() {
    let o = run(&["k0", path(&fixture("two_objects.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Z^1\n");
}

#[test]
fn hypotheses_after_completion() {
    let o = run(&["k0", "--hypotheses", "--complete", path(&fixture("idempotent.json"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("k0: 0\n"));
    let o = run(&["k0", "--hypotheses", path(&fixture("idempotent.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL well-formed: unknown morphism id_A"));
}

#[test]
fn corrupted_boundary_is_named() {
    let o = run(&["chain", "homology", path(&fixture("corrupt_boundary.json"))]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("∂∘∂") && err.contains("degree 2"), "{err}");
}

#[test]
fn circle_homology() {
    let o = run(&["chain", "homology", path(&fixture("circle.json"))]);
    assert_eq!(stdout(&o), "H0: Z^1\nH1: Z^1\n");
    let o = run(&["chain", "qiso", path(&fixture("circle.json")), path(&fixture("circle.json"))]);
    assert!(stdout(&o).starts_with("quasi_isomorphic: true"));
}

#[test]
fn cut_and_paste_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cut = dir.path().join("cut.json");
    let glued = dir.path().join("glued.json");
    let o = run(&["surface", "cut", path(&fixture("octahedron.json")), "--circle", "1,2,3,4", "-o", path(&cut)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("class: {(0,1),(0,1)}"));
    let o = run(&["surface", "paste", path(&cut), "--left", "0", "--right", "1", "-o", path(&glued)]);
    assert!(stdout(&o).contains("class: {(0,0)}"));
    let o = run(&["sk", "decide", path(&fixture("octahedron.json")), path(&glued)]);
    assert!(stdout(&o).starts_with("yes"));
}

#[test]
fn witness_between_equivalent_disjoint_unions() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n);
    run(&["surface", "build", "--genus", "1", "-o", path(&p("t"))]);
    run(&["surface", "build", "--boundary", "2", "-o", path(&p("a"))]);
    run(&["surface", "build", "--genus", "1", "--boundary", "2", "-o", path(&p("v"))]);
    run(&["surface", "union", path(&p("a")), path(&p("t")), "-o", path(&p("m"))]);
    run(&["surface", "union", path(&p("v")), path(&fixture("octahedron.json")), "-o", path(&p("n"))]);
    let o = run(&["sk", "witness", path(&p("m")), path(&p("n"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("moves: 1\n"), "{}", stdout(&o));
    let o = run(&["sk", "witness", path(&fixture("octahedron.json")), path(&fixture("torus.json"))]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn square_through_the_chain_functor() {
    let dir = tempfile::tempdir().unwrap();
    let q = dir.path().join("q.json");
    let o = run(&["euler", "square", path(&fixture("octahedron.json")), "--circle", "1,2,3,4", "-o", path(&q)]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["euler", "verify-square", path(&q)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS pushout quasi-isomorphic"));
}

#[test]
fn unknown_invariant_is_malformed_input() {
    let o = run(&["sk", "invariants", path(&fixture("torus.json")), "--invariant", "colour"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["sk", "invariants", path(&fixture("torus.json")), "--invariant", "euler"]);
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn acceptance_report_is_byte_stable() {
    let args = ["--format", "kv", "accept", "--only", "snf,figure-two,presentations"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().all(|l| l.contains("status=PASS")), "{text}");
}

#[test]
fn unknown_criterion_exits_two() {
    let o = run(&["accept", "--only", "nine"]);
    assert_eq!(o.status.code(), Some(2));
}
