//! Exact slope arithmetic, negative continued fractions and the SL₂(ℤ) action.
//!
//! Nothing here touches floating point; every value is a big rational.

mod cfrac;
mod slope;
mod unimat;

pub use cfrac::{eval_cfrac, is_reduced_tail, to_cfrac, CFrac};
pub use slope::{slope, Slope};
pub use unimat::{mobius, mobius_projective, normalizing_matrix, pair_determinant, ProjectivePoint, UniMat};

/// Same as [`Slope::new`].
pub fn slope_normalize(p: impl Into<num_bigint::BigInt>, q: impl Into<num_bigint::BigInt>) -> crate::Result<Slope> {
    Slope::new(p, q)
}
