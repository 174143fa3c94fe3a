//! SK invariants: additive functions of a class that survive regluing.

use crate::surface::DiffeoClass;

pub trait SkInvariant: Send + Sync {
    fn name(&self) -> &'static str;

    fn describe(&self) -> &'static str;

    fn evaluate(&self, c: &DiffeoClass) -> i64;
}

pub struct EulerCharacteristic;

impl SkInvariant for EulerCharacteristic {
    fn name(&self) -> &'static str {
        "euler"
    }

    fn describe(&self) -> &'static str {
        "Euler characteristic"
    }

    fn evaluate(&self, c: &DiffeoClass) -> i64 {
        c.euler_characteristic()
    }
}

/// Vanishes on every oriented surface; kept so that callers can ask for it.
pub struct Signature;

impl SkInvariant for Signature {
    fn name(&self) -> &'static str {
        "signature"
    }

    fn describe(&self) -> &'static str {
        "signature (zero in dimension 2)"
    }

    fn evaluate(&self, _: &DiffeoClass) -> i64 {
        0
    }
}

/// Number of boundary circles, the image in C₁.
pub struct BoundaryCircles;

impl SkInvariant for BoundaryCircles {
    fn name(&self) -> &'static str {
        "boundary"
    }

    fn describe(&self) -> &'static str {
        "boundary circles"
    }

    fn evaluate(&self, c: &DiffeoClass) -> i64 {
        i64::from(c.boundary_circles())
    }
}

pub fn invariant_registry() -> Vec<Box<dyn SkInvariant>> {
    vec![Box::new(EulerCharacteristic), Box::new(Signature), Box::new(BoundaryCircles)]
}

pub fn invariant_by_name(name: &str) -> Option<Box<dyn SkInvariant>> {
    invariant_registry().into_iter().find(|i| i.name() == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_and_values() {
        let t = DiffeoClass::from_pieces(vec![crate::surface::Piece::new(1, 2), crate::surface::Piece::new(0, 1)]);
        assert_eq!(invariant_by_name("euler").unwrap().evaluate(&t), -1);
        assert_eq!(invariant_by_name("boundary").unwrap().evaluate(&t), 3);
        assert_eq!(invariant_by_name("signature").unwrap().evaluate(&t), 0);
        assert!(invariant_by_name("volume").is_none());
        let names: Vec<_> = invariant_registry().iter().map(|i| i.name()).collect();
        assert_eq!(names, ["euler", "signature", "boundary"]);
    }
}
