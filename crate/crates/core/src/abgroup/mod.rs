//! Exact integer linear algebra: Smith normal form, finitely presented
//! abelian groups, homomorphisms between them and exactness.

mod hom;
pub(crate) mod int_serde;
mod matrix;
mod presentation;
mod snf;
mod sparse;

pub use hom::{
    check_exact_at, exactness_at, hom_is_injective, hom_is_surjective, kernel_basis, AbHom, ExactnessReport,
};
pub use matrix::IntMatrix;
pub use presentation::{
    element_normal_form, quotient_invariants, AbGroupPresentation, ElementCoords, GroupInvariants, Quotient,
};
pub use snf::{smith_normal_form, SmithForm};
pub use sparse::{invariant_factors, rank};

pub(crate) use snf::smith_with_inverses;
