//! Bundles on an elliptic curve and the Sklyanin algebras `Q_{n,k}(E, τ)`.
//!
//! * [`exact`]: slopes, negative continued fractions, the SL₂(ℤ) action.
//! * [`strata`]: slope sequences, characteristic successors, degeneration posets.
//! * [`bundles`]: Hom/Ext dimensions, duality, Fourier–Mukai and stability of indecomposable types.
//! * [`theta`]: theta functions by truncated q-series.
//! * [`sklyanin`]: relation tensors, graded dimensions, the Poisson limit and shuffle realizations.
//!
//! The combinatorial half is exact. The numerical half reports residuals and
//! numerical ranks, with every random choice drawn from a caller-supplied RNG.
//!
//! ```
//! use elliptic_sklyanin::strata::reachable_poset;
//! use elliptic_sklyanin::sklyanin::relation_tensor;
//! use elliptic_sklyanin::theta::ModularParam;
//! use num_complex::Complex64;
//!
//! let poset = reachable_poset(&"0,17/2".parse().unwrap()).unwrap();
//! assert_eq!((poset.node_count(), poset.edge_count()), (14, 17));
//!
//! let r = relation_tensor(3, 1, Complex64::new(0.17, 0.11), &ModularParam::square()).unwrap();
//! assert_eq!(r.rank(), 3);
//! ```

pub mod bundles;
pub mod error;
pub mod exact;
pub mod linalg;
pub mod sklyanin;
pub mod strata;
pub mod theta;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/strata.md")]
    mod strata {}
    #[doc = include_str!("../../../book/src/bundles.md")]
    mod bundles {}
    #[doc = include_str!("../../../book/src/theta.md")]
    mod theta {}
    #[doc = include_str!("../../../book/src/sklyanin.md")]
    mod sklyanin {}
    #[doc = include_str!("../../../book/src/shuffle.md")]
    mod shuffle {}
}
