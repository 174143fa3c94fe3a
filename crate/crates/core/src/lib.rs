//! Scissors congruence of surfaces with boundary, the K₀ presentation of
//! categories with squares, and the chain-level Euler characteristic.

pub mod abgroup;
pub mod acceptance;
pub mod chains;
pub mod error;
pub mod euler_functor;
pub mod sk_groups;
pub mod squares_k0;
pub mod surface;
