use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::matrix::IntMatrix;
use super::presentation::{AbGroupPresentation, GroupInvariants, Quotient};
use super::snf::smith_normal_form;
use crate::error::AlgebraError;

/// Homomorphism between finitely presented groups. Column `j` of `matrix` is
/// the image of source generator `j` in target generator coordinates.
#[derive(Clone, Debug)]
pub struct AbHom {
    source: AbGroupPresentation,
    target: AbGroupPresentation,
    matrix: IntMatrix,
    source_q: Quotient,
    target_q: Quotient,
}

impl AbHom {
    /// Checks dimensions and that every source relation lands in the target
    /// relation lattice.
    pub fn new(
        source: AbGroupPresentation,
        target: AbGroupPresentation,
        matrix: IntMatrix,
    ) -> Result<Self, AlgebraError> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(AlgebraError::DimensionMismatch {
                left: (matrix.rows(), matrix.cols()),
                right: (target.rank(), source.rank()),
            });
        }
        let target_q = target.quotient();
        for (i, r) in source.relations().iter().enumerate() {
            let image = matrix.apply(r)?;
            if !target_q.is_zero(&image)? {
                return Err(AlgebraError::NotWellDefined { relation: i });
            }
        }
        let source_q = source.quotient();
        Ok(Self { source, target, matrix, source_q, target_q })
    }

    pub fn identity(g: &AbGroupPresentation) -> Self {
        Self::new(g.clone(), g.clone(), IntMatrix::identity(g.rank())).expect("identity is well defined")
    }

    pub fn source(&self) -> &AbGroupPresentation {
        &self.source
    }

    pub fn target(&self) -> &AbGroupPresentation {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn source_quotient(&self) -> &Quotient {
        &self.source_q
    }

    pub fn target_quotient(&self) -> &Quotient {
        &self.target_q
    }

    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>, AlgebraError> {
        self.matrix.apply(v)
    }

    /// Basis of the preimage of the target relation lattice, i.e. of the kernel
    /// of `Z^source → target group`.
    pub fn kernel_lattice(&self) -> Vec<Vec<BigInt>> {
        let m = self.source.rank();
        let images: Vec<_> =
            (0..m).map(|j| self.target_q.normal_form(&self.matrix.column(j)).expect("column length")).collect();
        let factors = self.target_q.invariants().torsion;
        let t = factors.len();
        let f = images.first().map_or(0, |c| c.free.len());
        // unknowns: x (m) then y (t); rows: torsion t then free f.
        let mut block = IntMatrix::zeros(t + f, m + t);
        for (j, img) in images.iter().enumerate() {
            for (i, x) in img.torsion.iter().enumerate() {
                block.set(i, j, x.clone());
            }
            for (i, x) in img.free.iter().enumerate() {
                block.set(t + i, j, x.clone());
            }
        }
        for (i, d) in factors.iter().enumerate() {
            block.set(i, m + i, d.clone());
        }
        kernel_basis(&block).into_iter().map(|v| v[..m].to_vec()).filter(|v| v.iter().any(|x| !x.is_zero())).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_lattice().iter().all(|v| self.source_q.is_zero(v).expect("kernel vector length"))
    }

    pub fn image_columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.matrix.cols()).map(|j| self.matrix.column(j)).collect()
    }

    /// Target group modulo the image.
    pub fn cokernel(&self) -> GroupInvariants {
        self.target.with_relations(self.image_columns()).expect("column length").quotient().invariants()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }
}

/// Integer basis of `{x : a·x = 0}` read off the column transform of the
/// Smith form.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    (rank..a.cols()).map(|j| snf.v.column(j)).collect()
}

pub fn hom_is_injective(f: &AbHom) -> bool {
    f.is_injective()
}

pub fn hom_is_surjective(f: &AbHom) -> bool {
    f.is_surjective()
}

/// Outcome of an exactness check at the middle group of `f` then `g`.
#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub composite_vanishes: bool,
    pub kernel_in_image: bool,
    /// `(ker g) / (im f + relations)`, trivial exactly when exact.
    pub homology: GroupInvariants,
}

impl ExactnessReport {
    pub fn exact(&self) -> bool {
        self.composite_vanishes && self.kernel_in_image
    }
}

pub fn exactness_at(f: &AbHom, g: &AbHom) -> Result<ExactnessReport, AlgebraError> {
    if f.target() != g.source() {
        return Err(AlgebraError::NotComposable);
    }
    let composite_vanishes = (0..f.source().rank()).all(|j| {
        let mid = f.matrix.column(j);
        let out = g.apply(&mid).expect("composable");
        g.target_quotient().is_zero(&out).expect("length")
    });
    let image_plus_relations = f.target().with_relations(f.image_columns())?;
    let iq = image_plus_relations.quotient();
    let kernel = g.kernel_lattice();
    let kernel_in_image = kernel.iter().all(|v| iq.is_zero(v).expect("length"));
    // Homology: kernel lattice generators modulo image + relations, measured
    // inside the group Z^mid / (im f + R).
    let homology = subgroup_invariants(&iq, &kernel);
    Ok(ExactnessReport { composite_vanishes, kernel_in_image, homology })
}

pub fn check_exact_at(f: &AbHom, g: &AbHom) -> Result<bool, AlgebraError> {
    Ok(exactness_at(f, g)?.exact())
}

/// Isomorphism type of the subgroup of `q`'s group generated by `gens`.
fn subgroup_invariants(q: &Quotient, gens: &[Vec<BigInt>]) -> GroupInvariants {
    let coords: Vec<_> = gens.iter().map(|v| q.normal_form(v).expect("length")).collect();
    let factors = q.invariants().torsion;
    let t = factors.len();
    let f = coords.first().map_or(0, |c| c.free.len());
    let k = coords.len();
    // Subgroup generated by columns of `block` inside Z^f ⊕ ⨁Z/dᵢ is
    // Z^k / kernel; compute via the kernel of [C | D].
    let mut block = IntMatrix::zeros(t + f, k + t);
    for (j, c) in coords.iter().enumerate() {
        for (i, x) in c.torsion.iter().enumerate() {
            block.set(i, j, x.clone());
        }
        for (i, x) in c.free.iter().enumerate() {
            block.set(t + i, j, x.clone());
        }
    }
    for (i, d) in factors.iter().enumerate() {
        block.set(i, k + i, d.clone());
    }
    let rels: Vec<Vec<BigInt>> = kernel_basis(&block).into_iter().map(|v| v[..k].to_vec()).collect();
    Quotient::new(k, &rels).invariants()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> AbGroupPresentation {
        AbGroupPresentation::free(["e"]).unwrap()
    }

    #[test]
    fn identity_is_bijective() {
        let g = AbGroupPresentation::from_small(["a", "b"], &[vec![2, 4]]).unwrap();
        let id = AbHom::identity(&g);
        assert!(id.is_injective());
        assert!(id.is_surjective());
    }

    #[test]
    fn doubling_on_z() {
        let f = AbHom::new(z(), z(), IntMatrix::from_rows(&[[2]])).unwrap();
        assert!(f.is_injective());
        assert!(!f.is_surjective());
        assert_eq!(f.cokernel().to_string(), "Z/2");
    }

    #[test]
    fn ill_defined_map_is_rejected() {
        let z2 = AbGroupPresentation::from_small(["e"], &[vec![2]]).unwrap();
        // Z/2 → Z, e ↦ 1 sends the relation 2e to 2 ≠ 0
        assert!(matches!(
            AbHom::new(z2, z(), IntMatrix::from_rows(&[[1]])),
            Err(AlgebraError::NotWellDefined { relation: 0 })
        ));
    }

    #[test]
    fn short_exact_z_z_z2() {
        let z2 = AbGroupPresentation::from_small(["e"], &[vec![2]]).unwrap();
        let f = AbHom::new(z(), z(), IntMatrix::from_rows(&[[2]])).unwrap();
        let g = AbHom::new(z(), z2, IntMatrix::from_rows(&[[1]])).unwrap();
        assert!(check_exact_at(&f, &g).unwrap());
        // ×4 is not exact against the quotient to Z/2
        let f4 = AbHom::new(z(), z(), IntMatrix::from_rows(&[[4]])).unwrap();
        let report = exactness_at(&f4, &g).unwrap();
        assert!(!report.exact());
        assert_eq!(report.homology.to_string(), "Z/2");
    }

    #[test]
    fn zero_to_z_to_zero() {
        let zero = AbGroupPresentation::free(Vec::<String>::new()).unwrap();
        let into = AbHom::new(zero.clone(), z(), IntMatrix::zeros(1, 0)).unwrap();
        let id = AbHom::identity(&z());
        let out = AbHom::new(z(), zero, IntMatrix::zeros(0, 1)).unwrap();
        assert!(check_exact_at(&into, &id).unwrap());
        assert!(check_exact_at(&id, &out).unwrap());
        // 0 → Z → 0 is not exact at Z
        assert!(!check_exact_at(&into, &out).unwrap());
    }

    #[test]
    fn composability_is_checked() {
        let z2 = AbGroupPresentation::free(["a", "b"]).unwrap();
        let f = AbHom::identity(&z());
        let g = AbHom::identity(&z2);
        assert!(matches!(exactness_at(&f, &g), Err(AlgebraError::NotComposable)));
    }
}
