//! K₀ of categories with squares, presented by objects modulo the basepoint
//! and one relation per distinguished square.

mod category;
mod mfd2;

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abgroup::{AbGroupPresentation, Quotient};

pub use category::{check_lemma_hypotheses, CheckItem, FiniteSquaresCategory, HypothesisReport, MorphismSpec};
pub(crate) use mfd2::{for_each_covering, for_each_gluing, glue_flat};
pub use mfd2::{glue_classes, k0_of_mfd2, mfd2_instance, Caps, Mfd2Instance, Mfd2K0};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SquaresError {
    #[error("basepoint {0} is not an object index")]
    BadBasepoint(usize),
    #[error("square {square} refers to object {index}, out of range")]
    BadSquare { square: usize, index: usize },
    #[error("object label {0:?} appears twice")]
    DuplicateObject(String),
}

#[derive(Serialize, Deserialize)]
struct RawPresentation {
    objects: Vec<String>,
    basepoint: usize,
    squares: Vec<[usize; 4]>,
}

/// Objects, a basepoint and distinguished squares `(A, B, C, D)` with `A ↣ B`
/// on top and `C ↣ D` at the bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquaresPresentation {
    objects: Vec<String>,
    basepoint: usize,
    squares: Vec<[usize; 4]>,
}

impl Serialize for SquaresPresentation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RawPresentation { objects: self.objects.clone(), basepoint: self.basepoint, squares: self.squares.clone() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SquaresPresentation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawPresentation::deserialize(deserializer)?;
        SquaresPresentation::new(raw.objects, raw.basepoint, raw.squares).map_err(serde::de::Error::custom)
    }
}

impl SquaresPresentation {
    pub fn new(objects: Vec<String>, basepoint: usize, squares: Vec<[usize; 4]>) -> Result<Self, SquaresError> {
        if basepoint >= objects.len() {
            return Err(SquaresError::BadBasepoint(basepoint));
        }
        let mut seen = HashSet::new();
        for o in &objects {
            if !seen.insert(o) {
                return Err(SquaresError::DuplicateObject(o.clone()));
            }
        }
        for (i, sq) in squares.iter().enumerate() {
            if let Some(&bad) = sq.iter().find(|&&x| x >= objects.len()) {
                return Err(SquaresError::BadSquare { square: i, index: bad });
            }
        }
        Ok(SquaresPresentation { objects, basepoint, squares })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn squares(&self) -> &[[usize; 4]] {
        &self.squares
    }

    pub fn object_index(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == label)
    }

    /// `[O]` and `[A] + [D] − [B] − [C]` per square, zero relations and
    /// repeats dropped, in first-appearance order.
    pub fn relation_rows(&self) -> Vec<Vec<(usize, i64)>> {
        let mut seen = HashSet::new();
        let mut out = vec![vec![(self.basepoint, 1)]];
        for &[a, b, c, d] in &self.squares {
            let mut row: BTreeMap<usize, i64> = BTreeMap::new();
            for (i, x) in [(a, 1), (d, 1), (b, -1), (c, -1)] {
                *row.entry(i).or_default() += x;
            }
            let row: Vec<(usize, i64)> = row.into_iter().filter(|&(_, x)| x != 0).collect();
            if !row.is_empty() && seen.insert(row.clone()) {
                out.push(row);
            }
        }
        out
    }
}

/// Free abelian group on the objects modulo `[O]` and the square relations.
pub fn k0_presentation(p: &SquaresPresentation) -> AbGroupPresentation {
    let n = p.objects.len();
    let relations = p
        .relation_rows()
        .into_iter()
        .map(|row| {
            let mut v = vec![BigInt::from(0); n];
            for (i, x) in row {
                v[i] = BigInt::from(x);
            }
            v
        })
        .collect();
    AbGroupPresentation::new(p.objects.clone(), relations).expect("labels checked unique")
}

/// Same group as `k0_presentation`, built without dense relation vectors.
pub fn k0_quotient(p: &SquaresPresentation) -> Quotient {
    Quotient::from_sparse_relations(p.objects.len(), p.relation_rows())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::quotient_invariants;

    fn pres(objects: &[&str], squares: Vec<[usize; 4]>) -> SquaresPresentation {
        SquaresPresentation::new(objects.iter().map(|s| s.to_string()).collect(), 0, squares).unwrap()
    }

    #[test]
    fn lone_object_generates_z() {
        let p = pres(&["O", "X"], vec![]);
        assert_eq!(quotient_invariants(&k0_presentation(&p)).to_string(), "Z^1");
    }

    #[test]
    fn coproduct_square() {
        let p = pres(&["O", "A", "B", "S"], vec![[0, 1, 2, 3]]);
        let g = k0_presentation(&p);
        assert_eq!(quotient_invariants(&g).to_string(), "Z^2");
        let q = g.quotient();
        let s = q.generator_coords(3);
        let a = q.generator_coords(1);
        let b = q.generator_coords(2);
        let sum: Vec<BigInt> = a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect();
        assert_eq!(s.free, sum);
    }

    #[test]
    fn degenerate_square_is_vacuous() {
        let base = pres(&["O", "A", "B"], vec![]);
        let with = pres(&["O", "A", "B"], vec![[1, 2, 1, 2]]);
        assert_eq!(quotient_invariants(&k0_presentation(&base)), quotient_invariants(&k0_presentation(&with)));
        assert_eq!(with.relation_rows().len(), 1);
    }

    #[test]
    fn sparse_and_dense_agree() {
        let p = pres(&["O", "A", "B", "S", "T"], vec![[0, 1, 2, 3], [1, 3, 3, 4], [0, 4, 4, 2]]);
        assert_eq!(k0_quotient(&p).invariants(), quotient_invariants(&k0_presentation(&p)));
    }

    #[test]
    fn validation() {
        let labels = vec!["O".to_string(), "A".to_string()];
        assert_eq!(SquaresPresentation::new(labels.clone(), 2, vec![]).unwrap_err(), SquaresError::BadBasepoint(2));
        assert!(matches!(
            SquaresPresentation::new(labels, 0, vec![[0, 1, 1, 5]]),
            Err(SquaresError::BadSquare { square: 0, index: 5 })
        ));
        let text = r#"{"objects":["O","X","X"],"basepoint":0,"squares":[]}"#;
        assert!(serde_json::from_str::<SquaresPresentation>(text).is_err());
    }
}
