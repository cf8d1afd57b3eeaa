//! Sklyanin elliptic algebras `Q_{n,k}(E, τ)`: relation tensors, graded
//! dimensions by numerical rank, the `τ → 0` Poisson bracket, and the
//! shuffle-product realizations (`S_λ`, `S_{λ,p}`, `T_n`, multigraded).
//!
//! Generators `x_0..x_{n-1}` span `V`; a quadratic expression `Σ c_{ab} x_a x_b`
//! is the vector `c` in `V ⊗ V` with `x_a x_b` at index `a·n + b`.

mod functional;
mod poisson;
mod relations;
mod serre;
mod symfun;
mod t3;

pub use functional::{
    associativity_residual, center_space_even, central_element_odd, domain_point, functional_relation_residual,
    generator_index, reduce_to_domain, CenterReport, KernelChoice, ProductRule, ProductTable,
};
pub use poisson::{casimirs, poisson_from_family, CasimirReport, PoissonTensor};
pub use relations::{
    antisymmetric_subspace, classical_limit_angles, flatness, generic_tau, graded_dim, heisenberg_check,
    heisenberg_generators, invariance_residual, polynomial_dim, relation_rows, relation_space_with, relation_tensor,
    FlatnessReport, GradedDims, RelationSpace, GENERIC_TOL,
};
pub use serre::{serre_zero_check, two_component_instance, SerreReport};
pub use symfun::{
    multigraded_shuffle, shuffle_product, sklyanin_kernel, tn_product, tn_product_kernel, Kernel, SymFun, Symmetry,
};
pub use t3::{t3_basis_scale, t3_quadratic_angle, t3_relation_residual, t3_relation_vectors, T3Report};

use num_integer::Integer;

use crate::error::{Error, Result};

/// Relative singular-value threshold for every numerical rank.
pub const RANK_TOL: f64 = 1.0e-8;

pub(crate) fn check_nk(n: usize, k: usize) -> Result<()> {
    if k == 0 || k >= n || n.gcd(&k) != 1 {
        return Err(Error::Domain(format!("need gcd(n, k) = 1 and n > k > 0, got ({n}, {k})")));
    }
    Ok(())
}
