use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::int_serde;
use super::matrix::IntMatrix;
use super::snf::{smith_normal_form, SmithForm};
use super::sparse::{eliminate_stream, sparse_row, SparseRow};
use crate::error::AlgebraError;

/// Free abelian group on named generators modulo integer relation vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation", into = "RawPresentation")]
pub struct AbGroupPresentation {
    generators: Vec<String>,
    relations: Vec<Vec<BigInt>>,
}

#[derive(Serialize, Deserialize)]
struct RawPresentation {
    generators: Vec<String>,
    #[serde(with = "int_serde::vec_vec")]
    relations: Vec<Vec<BigInt>>,
}

impl TryFrom<RawPresentation> for AbGroupPresentation {
    type Error = AlgebraError;

    fn try_from(raw: RawPresentation) -> Result<Self, Self::Error> {
        AbGroupPresentation::new(raw.generators, raw.relations)
    }
}

impl From<AbGroupPresentation> for RawPresentation {
    fn from(p: AbGroupPresentation) -> Self {
        RawPresentation { generators: p.generators, relations: p.relations }
    }
}

impl AbGroupPresentation {
    pub fn new(generators: Vec<String>, relations: Vec<Vec<BigInt>>) -> Result<Self, AlgebraError> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.as_str()) {
                return Err(AlgebraError::DuplicateGenerator(g.clone()));
            }
        }
        for r in &relations {
            if r.len() != generators.len() {
                return Err(AlgebraError::LengthMismatch { expected: generators.len(), found: r.len() });
            }
        }
        Ok(Self { generators, relations })
    }

    /// Convenience constructor for small integer relations.
    pub fn from_small<S: Into<String>>(
        generators: impl IntoIterator<Item = S>,
        relations: &[Vec<i64>],
    ) -> Result<Self, AlgebraError> {
        let relations = relations.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::new(generators.into_iter().map(Into::into).collect(), relations)
    }

    pub fn free<S: Into<String>>(generators: impl IntoIterator<Item = S>) -> Result<Self, AlgebraError> {
        Self::new(generators.into_iter().map(Into::into).collect(), Vec::new())
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &[Vec<BigInt>] {
        &self.relations
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, label: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == label)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.rank()];
        v[i] = BigInt::one();
        v
    }

    /// Same generators with extra relations appended.
    pub fn with_relations(&self, extra: impl IntoIterator<Item = Vec<BigInt>>) -> Result<Self, AlgebraError> {
        let mut relations = self.relations.clone();
        relations.extend(extra);
        Self::new(self.generators.clone(), relations)
    }

    pub fn relation_matrix(&self) -> IntMatrix {
        IntMatrix::from_big_rows(self.rank(), &self.relations).expect("lengths validated")
    }

    pub fn quotient(&self) -> Quotient {
        Quotient::new(self.rank(), &self.relations)
    }
}

/// Isomorphism type `Z^free_rank ⊕ ⨁ Z/torsionᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupInvariants {
    pub free_rank: usize,
    #[serde(with = "int_serde::vec")]
    pub torsion: Vec<BigInt>,
}

impl GroupInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for GroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Canonical coordinates of an element: torsion coordinates reduced modulo
/// their invariant factors, then free coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElementCoords {
    #[serde(with = "int_serde::vec")]
    pub torsion: Vec<BigInt>,
    #[serde(with = "int_serde::vec")]
    pub free: Vec<BigInt>,
}

impl ElementCoords {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().chain(&self.free).all(Zero::is_zero)
    }
}

impl fmt::Display for ElementCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.torsion.iter().map(ToString::to_string).collect();
        let fr: Vec<String> = self.free.iter().map(ToString::to_string).collect();
        if t.is_empty() {
            write!(f, "({})", fr.join(","))
        } else {
            write!(f, "(tors {}; free {})", t.join(","), fr.join(","))
        }
    }
}

/// Precomputed structure of `Z^n / L`: sparse unit elimination followed by a
/// Smith form of the leftover block. Answers isomorphism type, normal forms
/// and lattice membership.
#[derive(Clone, Debug)]
pub struct Quotient {
    ngens: usize,
    /// Position of each surviving generator in the reduced block.
    survivor_index: BTreeMap<usize, usize>,
    /// Eliminated generator → expression in surviving generators (block indices).
    substitutions: BTreeMap<usize, SparseRow>,
    smith: SmithForm,
    /// Per reduced coordinate: its invariant factor (0 = free).
    factors: Vec<BigInt>,
}

impl Quotient {
    pub fn new(ngens: usize, relations: &[Vec<BigInt>]) -> Self {
        let rows: Vec<SparseRow> = relations.iter().map(|r| sparse_row(r)).collect();
        Self::from_sparse(ngens, rows)
    }

    /// Relations given as `(generator, coefficient)` lists.
    pub fn from_sparse_relations(ngens: usize, relations: impl IntoIterator<Item = Vec<(usize, i64)>>) -> Self {
        let rows = relations
            .into_iter()
            .map(|r| {
                let mut row = SparseRow::new();
                for (i, x) in r {
                    add_into(&mut row, i, &BigInt::from(x));
                }
                row
            })
            .filter(|r| !r.is_empty())
            .collect();
        Self::from_sparse(ngens, rows)
    }

    pub(crate) fn from_sparse(ngens: usize, rows: Vec<SparseRow>) -> Self {
        let red = eliminate_stream(ngens, rows);
        let survivors: Vec<usize> = (0..ngens).filter(|&c| !red.eliminated[c]).collect();
        let survivor_index: BTreeMap<usize, usize> = survivors.iter().enumerate().map(|(i, &c)| (c, i)).collect();

        // Resolve substitutions in reverse elimination order: a pivot row only
        // mentions columns that were alive when it was chosen.
        let mut substitutions: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (p, row) in red.pivots.iter().rev() {
            let unit = &row[p];
            let mut expr = SparseRow::new();
            for (c, x) in row {
                if c == p {
                    continue;
                }
                let coef = -(x * unit);
                if let Some(&k) = survivor_index.get(c) {
                    add_into(&mut expr, k, &coef);
                } else {
                    let sub = substitutions.get(c).expect("later pivot resolved first").clone();
                    for (k, y) in &sub {
                        add_into(&mut expr, *k, &(&coef * y));
                    }
                }
            }
            substitutions.insert(*p, expr);
        }

        let mut residual: Vec<Vec<BigInt>> = red
            .residual
            .iter()
            .map(|r| {
                let mut dense = vec![BigInt::zero(); survivors.len()];
                for (c, x) in r {
                    dense[survivor_index[c]] = x.clone();
                }
                dense
            })
            .collect();
        residual.sort();
        residual.dedup();
        let block = IntMatrix::from_big_rows(survivors.len(), &residual).expect("uniform rows");
        let smith = smith_normal_form(&block);
        let factors = (0..survivors.len()).map(|i| smith.d.get(i).cloned().unwrap_or_else(BigInt::zero)).collect();
        Self { ngens, survivor_index, substitutions, smith, factors }
    }

    pub fn generator_count(&self) -> usize {
        self.ngens
    }

    pub fn invariants(&self) -> GroupInvariants {
        let free_rank = self.factors.iter().filter(|d| d.is_zero()).count();
        let torsion = self.factors.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect();
        GroupInvariants { free_rank, torsion }
    }

    /// Smith form of the reduced relation block (certificate material).
    pub fn reduced_smith(&self) -> &SmithForm {
        &self.smith
    }

    fn reduced(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut w = vec![BigInt::zero(); self.survivor_index.len()];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if let Some(&k) = self.survivor_index.get(&i) {
                w[k] += x;
            } else {
                for (k, y) in &self.substitutions[&i] {
                    w[*k] += x * y;
                }
            }
        }
        w
    }

    pub fn normal_form(&self, v: &[BigInt]) -> Result<ElementCoords, AlgebraError> {
        if v.len() != self.ngens {
            return Err(AlgebraError::LengthMismatch { expected: self.ngens, found: v.len() });
        }
        let w = self.reduced(v);
        let c = self.smith.v.left_apply(&w).expect("dimensions agree");
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for (x, d) in c.into_iter().zip(&self.factors) {
            if d.is_zero() {
                free.push(x);
            } else if !d.is_one() {
                torsion.push(x.mod_floor(d));
            }
        }
        Ok(ElementCoords { torsion, free })
    }

    /// Normal form of a single generator.
    pub fn generator_coords(&self, i: usize) -> ElementCoords {
        let mut v = vec![BigInt::zero(); self.ngens];
        v[i] = BigInt::one();
        self.normal_form(&v).expect("length matches")
    }

    pub fn is_zero(&self, v: &[BigInt]) -> Result<bool, AlgebraError> {
        Ok(self.normal_form(v)?.is_zero())
    }
}

fn add_into(row: &mut SparseRow, k: usize, x: &BigInt) {
    if x.is_zero() {
        return;
    }
    let e = row.entry(k).or_insert_with(BigInt::zero);
    *e += x;
    if e.is_zero() {
        row.remove(&k);
    }
}

pub fn quotient_invariants(g: &AbGroupPresentation) -> GroupInvariants {
    g.quotient().invariants()
}

pub fn element_normal_form(g: &AbGroupPresentation, v: &[BigInt]) -> Result<ElementCoords, AlgebraError> {
    g.quotient().normal_form(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn free_group() {
        let g = AbGroupPresentation::free(["a", "b"]).unwrap();
        assert_eq!(quotient_invariants(&g), GroupInvariants { free_rank: 2, torsion: vec![] });
        let nf = element_normal_form(&g, &big(&[7, -2])).unwrap();
        assert_eq!(nf.free, big(&[7, -2]));
    }

    #[test]
    fn cyclic_of_order_six() {
        let g = AbGroupPresentation::from_small(["a", "b"], &[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(quotient_invariants(&g), GroupInvariants { free_rank: 0, torsion: big(&[6]) });
    }

    #[test]
    fn trivial_group() {
        let g = AbGroupPresentation::from_small(["a"], &[vec![1]]).unwrap();
        assert!(quotient_invariants(&g).is_trivial());
        assert_eq!(quotient_invariants(&g).to_string(), "0");
    }

    #[test]
    fn normal_form_mod_two() {
        let g = AbGroupPresentation::from_small(["a", "b"], &[vec![2, 0]]).unwrap();
        let nf = element_normal_form(&g, &big(&[3, 5])).unwrap();
        assert_eq!(nf, element_normal_form(&g, &big(&[1, 5])).unwrap());
        assert_eq!(nf.torsion, big(&[1]));
        assert_eq!(nf.free, big(&[5]));
        assert!(element_normal_form(&g, &big(&[2, 0])).unwrap().is_zero());
    }

    #[test]
    fn length_checks() {
        assert!(AbGroupPresentation::from_small(["a"], &[vec![1, 2]]).is_err());
        assert!(AbGroupPresentation::free(["a", "a"]).is_err());
        let g = AbGroupPresentation::free(["a"]).unwrap();
        assert!(element_normal_form(&g, &big(&[1, 2])).is_err());
    }

    #[test]
    fn json_shape() {
        let g = AbGroupPresentation::from_small(["x", "y"], &[vec![1, -1]]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"generators":["x","y"],"relations":[[1,-1]]}"#);
        assert_eq!(serde_json::from_str::<AbGroupPresentation>(&s).unwrap(), g);
    }
}
