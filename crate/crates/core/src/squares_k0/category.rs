//! Finite categories with squares and a checker for the K₀ hypotheses.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::SquaresPresentation;

/// A morphism of the ambient category and which subcategories hold it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    /// Horizontal (`↣`).
    #[serde(default)]
    pub cofibration: bool,
    /// Vertical (`↠`).
    #[serde(default)]
    pub cofiber: bool,
}

impl MorphismSpec {
    pub fn new(name: &str, source: &str, target: &str, cofibration: bool, cofiber: bool) -> Self {
        MorphismSpec {
            name: name.to_string(),
            source: source.to_string(),
            target: target.to_string(),
            cofibration,
            cofiber,
        }
    }
}

/// Finite tables: morphisms, composites `[g, f, g∘f]`, distinguished squares
/// `[top, left, right, bottom]` by morphism name, and coproducts `[A, B, A⊔B]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteSquaresCategory {
    pub objects: Vec<String>,
    pub basepoint: String,
    pub morphisms: Vec<MorphismSpec>,
    #[serde(default)]
    pub composition: Vec<[String; 3]>,
    #[serde(default)]
    pub squares: Vec<[String; 4]>,
    #[serde(default)]
    pub coproducts: Vec<[String; 3]>,
}

impl FiniteSquaresCategory {
    /// Adds `id_X` for every object in both subcategories, its composites,
    /// and the squares `(id, f, f, id)` and `(f, id, id, f)`.
    pub fn completed(mut self) -> Self {
        let id = |x: &str| format!("id_{x}");
        let existing: HashSet<String> = self.morphisms.iter().map(|m| m.name.clone()).collect();
        for x in self.objects.clone() {
            if !existing.contains(&id(&x)) {
                self.morphisms.push(MorphismSpec::new(&id(&x), &x, &x, true, true));
            }
        }
        let mut comp: HashSet<[String; 3]> = self.composition.iter().cloned().collect();
        let mut squares: HashSet<[String; 4]> = self.squares.iter().cloned().collect();
        for m in self.morphisms.clone() {
            let (s, t) = (id(&m.source), id(&m.target));
            for entry in [[m.name.clone(), s.clone(), m.name.clone()], [t.clone(), m.name.clone(), m.name.clone()]] {
                if comp.insert(entry.clone()) {
                    self.composition.push(entry);
                }
            }
            let mut add = |sq: [String; 4]| {
                if squares.insert(sq.clone()) {
                    self.squares.push(sq);
                }
            };
            if m.cofiber {
                add([s.clone(), m.name.clone(), m.name.clone(), t.clone()]);
            }
            if m.cofibration {
                add([m.name.clone(), s, t, m.name.clone()]);
            }
        }
        self
    }

    /// Object-level square quadruples for the K₀ engine.
    pub fn to_presentation(&self) -> Result<SquaresPresentation, String> {
        let t = Tables::build(self)?;
        let squares = t.squares.iter().map(|&s| t.corners(s)).collect();
        SquaresPresentation::new(self.objects.clone(), t.base, squares).map_err(|e| e.to_string())
    }
}

/// One checked condition; `witness` describes the first failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub items: Vec<CheckItem>,
}

impl HypothesisReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn item(&self, name: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.name == name)
    }

    fn push(&mut self, name: &str, failure: Option<String>) {
        self.items.push(CheckItem { name: name.to_string(), passed: failure.is_none(), witness: failure });
    }
}

impl fmt::Display for HypothesisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.items {
            match &i.witness {
                None => writeln!(f, "PASS {}", i.name)?,
                Some(w) => writeln!(f, "FAIL {}: {w}", i.name)?,
            }
        }
        Ok(())
    }
}

struct Tables<'a> {
    c: &'a FiniteSquaresCategory,
    base: usize,
    src: Vec<usize>,
    tgt: Vec<usize>,
    comp: HashMap<(usize, usize), usize>,
    squares: Vec<[usize; 4]>,
    square_set: HashSet<[usize; 4]>,
    coproducts: HashMap<(usize, usize), usize>,
}

impl<'a> Tables<'a> {
    fn build(c: &'a FiniteSquaresCategory) -> Result<Self, String> {
        let mut obj = HashMap::new();
        for (i, o) in c.objects.iter().enumerate() {
            if obj.insert(o.as_str(), i).is_some() {
                return Err(format!("object {o} listed twice"));
            }
        }
        let object = |o: &str| obj.get(o).copied().ok_or_else(|| format!("unknown object {o}"));
        let mut mor = HashMap::new();
        let (mut src, mut tgt) = (Vec::new(), Vec::new());
        for (i, m) in c.morphisms.iter().enumerate() {
            if mor.insert(m.name.as_str(), i).is_some() {
                return Err(format!("morphism {} listed twice", m.name));
            }
            src.push(object(&m.source)?);
            tgt.push(object(&m.target)?);
        }
        let morphism = |m: &str| mor.get(m).copied().ok_or_else(|| format!("unknown morphism {m}"));
        let mut comp = HashMap::new();
        for [g, f, h] in &c.composition {
            let (g, f, h) = (morphism(g)?, morphism(f)?, morphism(h)?);
            if src[g] != tgt[f] || src[h] != src[f] || tgt[h] != tgt[g] {
                return Err(format!(
                    "composite {} of {} and {} has the wrong ends",
                    c.morphisms[h].name, c.morphisms[g].name, c.morphisms[f].name
                ));
            }
            if let Some(&old) = comp.get(&(g, f)) {
                if old != h {
                    return Err(format!("{} ∘ {} given twice", c.morphisms[g].name, c.morphisms[f].name));
                }
            }
            comp.insert((g, f), h);
        }
        let mut squares = Vec::new();
        let mut square_set = HashSet::new();
        for sq in &c.squares {
            let s = [morphism(&sq[0])?, morphism(&sq[1])?, morphism(&sq[2])?, morphism(&sq[3])?];
            if square_set.insert(s) {
                squares.push(s);
            }
        }
        let mut coproducts = HashMap::new();
        for [a, b, x] in &c.coproducts {
            let (a, b, x) = (object(a)?, object(b)?, object(x)?);
            coproducts.insert((a, b), x);
            coproducts.insert((b, a), x);
        }
        Ok(Tables { c, base: object(&c.basepoint)?, src, tgt, comp, squares, square_set, coproducts })
    }

    fn name(&self, m: usize) -> &str {
        &self.c.morphisms[m].name
    }

    fn obj(&self, o: usize) -> &str {
        &self.c.objects[o]
    }

    fn horizontal(&self, m: usize) -> bool {
        self.c.morphisms[m].cofibration
    }

    fn vertical(&self, m: usize) -> bool {
        self.c.morphisms[m].cofiber
    }

    fn n(&self) -> usize {
        self.c.morphisms.len()
    }

    fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp.get(&(g, f)).copied()
    }

    fn identity(&self, x: usize) -> Option<usize> {
        (0..self.n()).find(|&e| {
            self.src[e] == x
                && self.tgt[e] == x
                && (0..self.n()).all(|f| {
                    (self.tgt[f] != x || self.compose(e, f) == Some(f))
                        && (self.src[f] != x || self.compose(f, e) == Some(f))
                })
        })
    }

    fn is_iso(&self, f: usize, ids: &[Option<usize>]) -> bool {
        let (a, b) = (self.src[f], self.tgt[f]);
        (0..self.n()).any(|g| {
            self.src[g] == b
                && self.tgt[g] == a
                && self.compose(g, f).is_some()
                && self.compose(g, f) == ids[a]
                && self.compose(f, g) == ids[b]
        })
    }

    fn commutes(&self, [top, left, right, bottom]: [usize; 4]) -> bool {
        let p = self.compose(right, top);
        p.is_some() && p == self.compose(bottom, left)
    }

    fn corners(&self, [top, _, _, bottom]: [usize; 4]) -> [usize; 4] {
        [self.src[top], self.tgt[top], self.src[bottom], self.tgt[bottom]]
    }

    fn describe(&self, s: [usize; 4]) -> String {
        format!("({}, {}, {}, {})", self.name(s[0]), self.name(s[1]), self.name(s[2]), self.name(s[3]))
    }
}

/// Checks that the tables form a category with squares and that the
/// basepoint satisfies the three K₀ hypotheses. Coproducts are checked at
/// the level of objects: every pair has an entry, and for two distinguished
/// squares some distinguished square has the coproducts as corners.
pub fn check_lemma_hypotheses(c: &FiniteSquaresCategory) -> HypothesisReport {
    let mut report = HypothesisReport::default();
    let t = match Tables::build(c) {
        Ok(t) => t,
        Err(e) => {
            report.push("well-formed", Some(e));
            return report;
        }
    };
    report.push("well-formed", None);
    let n = t.n();
    let nobj = c.objects.len();
    let ids: Vec<Option<usize>> = (0..nobj).map(|x| t.identity(x)).collect();

    let composition = (|| {
        if let Some(x) = (0..nobj).find(|&x| ids[x].is_none()) {
            return Some(format!("no identity on {}", t.obj(x)));
        }
        for g in 0..n {
            for f in (0..n).filter(|&f| t.tgt[f] == t.src[g]) {
                let Some(gf) = t.compose(g, f) else {
                    return Some(format!("{} ∘ {} missing", t.name(g), t.name(f)));
                };
                if t.horizontal(g) && t.horizontal(f) && !t.horizontal(gf) {
                    return Some(format!("{} ∘ {} leaves the cofibrations", t.name(g), t.name(f)));
                }
                if t.vertical(g) && t.vertical(f) && !t.vertical(gf) {
                    return Some(format!("{} ∘ {} leaves the cofiber maps", t.name(g), t.name(f)));
                }
                for h in (0..n).filter(|&h| t.src[h] == t.tgt[g]) {
                    let left = t.compose(h, gf);
                    let right = t.compose(h, g).and_then(|hg| t.compose(hg, f));
                    if left != right {
                        return Some(format!("({} ∘ {}) ∘ {} not associative", t.name(h), t.name(g), t.name(f)));
                    }
                }
            }
        }
        None
    })();
    report.push("composition", composition);

    let axiom1 = (|| {
        for a in 0..nobj {
            for b in a..nobj {
                if !t.coproducts.contains_key(&(a, b)) {
                    return Some(format!("no coproduct for ({}, {})", t.obj(a), t.obj(b)));
                }
            }
        }
        let object_squares: HashSet<[usize; 4]> = t.squares.iter().map(|&s| t.corners(s)).collect();
        for s in &object_squares {
            for u in &object_squares {
                let sum = [0, 1, 2, 3].map(|i| t.coproducts[&(s[i], u[i])]);
                if !object_squares.contains(&sum) {
                    let names = sum.map(|o| t.obj(o).to_string()).join(", ");
                    return Some(format!("coproduct square ({names}) not distinguished"));
                }
            }
        }
        None
    })();
    report.push("axiom 1", axiom1);

    let axiom2 = (|| {
        for &s in &t.squares {
            let [top, left, right, bottom] = s;
            let shape = t.horizontal(top) && t.horizontal(bottom) && t.vertical(left) && t.vertical(right);
            let ends = t.src[top] == t.src[left]
                && t.tgt[top] == t.src[right]
                && t.tgt[left] == t.src[bottom]
                && t.tgt[right] == t.tgt[bottom];
            if !shape || !ends {
                return Some(format!("square {} is not a square of cofibrations over cofiber maps", t.describe(s)));
            }
            if !t.commutes(s) {
                return Some(format!("square {} does not commute", t.describe(s)));
            }
        }
        for &s in &t.squares {
            for &u in &t.squares {
                if s[2] == u[1] {
                    let h = [t.compose(u[0], s[0]), Some(s[1]), Some(u[2]), t.compose(u[3], s[3])];
                    if let [Some(a), Some(b), Some(c), Some(d)] = h {
                        if !t.square_set.contains(&[a, b, c, d]) {
                            return Some(format!(
                                "horizontal composite of {} and {} not distinguished",
                                t.describe(s),
                                t.describe(u)
                            ));
                        }
                    }
                }
                if s[3] == u[0] {
                    let v = [Some(s[0]), t.compose(u[1], s[1]), t.compose(u[2], s[2]), Some(u[3])];
                    if let [Some(a), Some(b), Some(c), Some(d)] = v {
                        if !t.square_set.contains(&[a, b, c, d]) {
                            return Some(format!(
                                "vertical composite of {} and {} not distinguished",
                                t.describe(s),
                                t.describe(u)
                            ));
                        }
                    }
                }
            }
        }
        None
    })();
    report.push("axiom 2", axiom2);

    let isos: Vec<bool> = (0..n).map(|f| t.is_iso(f, &ids)).collect();
    let axiom3 = (0..n)
        .find(|&f| isos[f] && !(t.horizontal(f) && t.vertical(f)))
        .map(|f| format!("isomorphism {} is not in both subcategories", t.name(f)));
    report.push("axiom 3", axiom3);

    let axiom4 = (|| {
        for top in (0..n).filter(|&m| t.horizontal(m)) {
            for left in (0..n).filter(|&m| t.vertical(m) && t.src[m] == t.src[top]) {
                for right in (0..n).filter(|&m| t.vertical(m) && t.src[m] == t.tgt[top]) {
                    for bottom in
                        (0..n).filter(|&m| t.horizontal(m) && t.src[m] == t.tgt[left] && t.tgt[m] == t.tgt[right])
                    {
                        let s = [top, left, right, bottom];
                        let forced = (isos[top] && isos[bottom]) || (isos[left] && isos[right]);
                        if forced && t.commutes(s) && !t.square_set.contains(&s) {
                            return Some(format!(
                                "commutative square {} with isomorphic sides is not distinguished",
                                t.describe(s)
                            ));
                        }
                    }
                }
            }
        }
        None
    })();
    report.push("axiom 4", axiom4);

    let initial_or_terminal = |keep: &dyn Fn(usize) -> bool, what: &str| {
        let count = |x: usize, out: bool| {
            (0..n)
                .filter(|&m| {
                    keep(m)
                        && if out { t.src[m] == t.base && t.tgt[m] == x } else { t.tgt[m] == t.base && t.src[m] == x }
                })
                .count()
        };
        let initial = (0..nobj).find(|&x| count(x, true) != 1);
        let terminal = (0..nobj).find(|&x| count(x, false) != 1);
        match (initial, terminal) {
            (Some(a), Some(b)) => Some(format!(
                "{} is neither initial ({} maps to {}) nor terminal ({} maps from {}) in the {what}",
                t.obj(t.base),
                count(a, true),
                t.obj(a),
                count(b, false),
                t.obj(b)
            )),
            _ => None,
        }
    };
    report.push("condition 1", initial_or_terminal(&|m| t.horizontal(m), "cofibrations"));
    report.push("condition 2", initial_or_terminal(&|m| t.vertical(m), "cofiber maps"));

    let condition3 = (|| {
        let object_squares: HashSet<[usize; 4]> = t.squares.iter().map(|&s| t.corners(s)).collect();
        for a in 0..nobj {
            for b in a..nobj {
                let found = (0..nobj).any(|x| {
                    object_squares.contains(&[t.base, a, b, x]) && object_squares.contains(&[t.base, b, a, x])
                });
                if !found {
                    return Some(format!("no X with squares for the pair ({}, {})", t.obj(a), t.obj(b)));
                }
            }
        }
        None
    })();
    report.push("condition 3", condition3);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coproduct_example() -> FiniteSquaresCategory {
        let m = |n: &str, s: &str, t: &str| MorphismSpec::new(n, s, t, true, true);
        let c = |g: &str, f: &str, h: &str| [g.to_string(), f.to_string(), h.to_string()];
        FiniteSquaresCategory {
            objects: ["O", "A", "B", "S"].map(String::from).to_vec(),
            basepoint: "O".into(),
            morphisms: vec![
                m("oa", "O", "A"),
                m("ob", "O", "B"),
                m("os", "O", "S"),
                m("as", "A", "S"),
                m("bs", "B", "S"),
            ],
            composition: vec![c("as", "oa", "os"), c("bs", "ob", "os")],
            squares: vec![["oa", "ob", "as", "bs"].map(String::from), ["ob", "oa", "bs", "as"].map(String::from)],
            coproducts: vec![],
        }
        .completed()
    }

    #[test]
    fn identities_complete_the_tables() {
        let r = check_lemma_hypotheses(&coproduct_example());
        for name in ["well-formed", "composition", "axiom 2", "axiom 3", "axiom 4", "condition 1", "condition 2"] {
            assert!(r.item(name).unwrap().passed, "{name}: {r}");
        }
    }

    #[test]
    fn presentation_of_the_example() {
        let p = coproduct_example().to_presentation().unwrap();
        let q = super::super::k0_quotient(&p);
        assert_eq!(q.invariants().to_string(), "Z^2");
    }

    #[test]
    fn truncated_example_misses_self_coproducts() {
        let r = check_lemma_hypotheses(&coproduct_example());
        // A ⊔ A is not among the four objects
        assert!(!r.item("axiom 1").unwrap().passed);
        let w = r.item("condition 3").unwrap().witness.clone().unwrap();
        assert!(w.contains("(A, A)"), "{w}");
        assert!(!r.all_passed());
    }

    /// `O` and an object with `A ⊔ A = A`.
    fn idempotent() -> FiniteSquaresCategory {
        FiniteSquaresCategory {
            objects: vec!["O".into(), "A".into()],
            basepoint: "O".into(),
            morphisms: vec![MorphismSpec::new("i", "O", "A", true, true)],
            composition: vec![],
            squares: vec![["i", "i", "id_A", "id_A"].map(String::from)],
            coproducts: vec![
                ["O", "O", "O"].map(String::from),
                ["O", "A", "A"].map(String::from),
                ["A", "A", "A"].map(String::from),
            ],
        }
        .completed()
    }

    #[test]
    fn closed_finite_category_passes_everything() {
        let r = check_lemma_hypotheses(&idempotent());
        assert!(r.all_passed(), "{r}");
        let q = super::super::k0_quotient(&idempotent().to_presentation().unwrap());
        assert_eq!(q.invariants().to_string(), "0");
    }

    #[test]
    fn missing_square_names_the_pair() {
        let mut c = idempotent();
        c.squares.retain(|s| s != &["i", "i", "id_A", "id_A"].map(String::from));
        let w = check_lemma_hypotheses(&c).item("condition 3").unwrap().witness.clone().unwrap();
        assert!(w.contains("(A, A)"), "{w}");
    }

    #[test]
    fn undistinguished_iso_square_breaks_axiom_four() {
        let mut c = idempotent();
        c.squares.retain(|s| s != &["id_O", "i", "i", "id_A"].map(String::from));
        let r = check_lemma_hypotheses(&c);
        let w = r.item("axiom 4").unwrap().witness.clone().unwrap();
        assert!(w.contains("(id_O, i, i, id_A)"), "{w}");
    }

    #[test]
    fn malformed_tables_are_reported() {
        let mut c = idempotent();
        c.squares.push(["i", "nope", "i", "i"].map(String::from));
        let r = check_lemma_hypotheses(&c);
        assert_eq!(r.items.len(), 1);
        assert!(r.item("well-formed").unwrap().witness.as_ref().unwrap().contains("nope"));
    }

    #[test]
    fn json_round_trip() {
        let c = idempotent();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<FiniteSquaresCategory>(&text).unwrap(), c);
    }
}
