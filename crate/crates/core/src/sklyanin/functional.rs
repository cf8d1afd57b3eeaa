use std::sync::Arc;

use itertools::Itertools;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::relations::{polynomial_dim, relation_space_with};
use super::symfun::{shuffle_product, sklyanin_kernel, tn_product_kernel, Kernel, SymFun, Symmetry};
use super::RANK_TOL;
use crate::error::{Error, Result};
use crate::linalg::{column_space, normalize_rows, null_space, random_vector, rank_of, singular_values, svd, CMat};
use crate::theta::{ModularParam, ThetaEvaluator};

/// How left-nested products of degree-one elements are formed: the kernel,
/// the per-position argument step, and whether the product is skew.
#[derive(Clone)]
pub struct ProductRule {
    pub kernel: Kernel,
    pub step: Complex64,
    pub alternating: bool,
}

impl ProductRule {
    /// `S_{λ,p}` with `λ = θ(x − y − nτ)/θ(x − y)`, `p = 2τ`.
    pub fn sklyanin(e: &ThetaEvaluator, tau: Complex64) -> Self {
        ProductRule { kernel: sklyanin_kernel(e, e.order(), tau), step: -tau * 2.0, alternating: false }
    }

    /// `S_{λ,p}` with an arbitrary kernel.
    pub fn shifted(kernel: Kernel, p: Complex64) -> Self {
        ProductRule { kernel, step: -p, alternating: false }
    }

    /// `T_n(E, τ)`: the skew product with shift `+2τ`.
    pub fn tn(e: &ThetaEvaluator, tau: Complex64) -> Self {
        ProductRule { kernel: tn_product_kernel(e, e.order(), tau), step: tau * 2.0, alternating: true }
    }
}

/// Values needed to evaluate every left-nested product `f_1 * ... * f_m` of
/// degree-one theta elements at one tuple `x_1..x_m`:
/// `Σ_σ sign(σ) Π_{i<j} K(x_σ(i), x_σ(j)) Π_i f_i(x_σ(i) + (i−1)·step)`.
pub struct ProductTable {
    n: usize,
    weights: Vec<(Vec<usize>, Complex64)>,
    /// `values[q][i][a] = θ_a(x_q + i·step)`
    values: Vec<Vec<Vec<Complex64>>>,
}

fn perm_sign(p: &[usize]) -> f64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl ProductTable {
    pub fn new(rule: &ProductRule, e: &ThetaEvaluator, x: &[Complex64]) -> Result<Self> {
        let m = x.len();
        let mut kern = vec![vec![Complex64::new(0.0, 0.0); m]; m];
        for a in 0..m {
            for b in 0..m {
                if a != b {
                    kern[a][b] = (rule.kernel)(x[a], x[b])?;
                }
            }
        }
        let weights = (0..m)
            .permutations(m)
            .map(|p| {
                let mut w = Complex64::new(if rule.alternating { perm_sign(&p) } else { 1.0 }, 0.0);
                for i in 0..m {
                    for j in i + 1..m {
                        w *= kern[p[i]][p[j]];
                    }
                }
                (p, w)
            })
            .collect();
        let values = x
            .iter()
            .map(|&xq| (0..m).map(|i| e.basis_all(xq + rule.step * i as f64)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(ProductTable { n: e.order(), weights, values })
    }

    /// The product of the degree-one elements with coefficient vectors `gens`.
    pub fn product(&self, gens: &[Vec<Complex64>]) -> Complex64 {
        let m = gens.len();
        // dot[q][i] = f_i(x_q + i·step)
        let dot: Vec<Vec<Complex64>> = self
            .values
            .iter()
            .map(|row| (0..m).map(|i| row[i].iter().zip(&gens[i]).map(|(v, c)| v * c).sum()).collect())
            .collect();
        self.weights.iter().map(|(p, w)| p.iter().enumerate().fold(*w, |acc, (i, &q)| acc * dot[q][i])).sum()
    }

    /// The product of basis elements `θ_{idx_1} * ... * θ_{idx_m}`.
    pub fn monomial(&self, idx: &[usize]) -> Complex64 {
        self.weights
            .iter()
            .map(|(p, w)| p.iter().enumerate().fold(*w, |acc, (i, &q)| acc * self.values[q][i][idx[i]]))
            .sum()
    }

    pub fn order(&self) -> usize {
        self.n
    }
}

/// Theta index realizing generator `x_a`: `x_a ↦ θ_{−a}`.
pub fn generator_index(n: usize, a: usize) -> usize {
    (n - a % n) % n
}

/// A uniform point `u + vω`, `u, v ∈ [0, 1)`.
pub fn domain_point<R: Rng>(rng: &mut R, omega: Complex64) -> Complex64 {
    let (u, v): (f64, f64) = (rng.gen(), rng.gen());
    omega * v + u
}

/// Moves `z` into the fundamental parallelogram `{u + vω : u, v ∈ [0, 1)}`.
pub fn reduce_to_domain(z: Complex64, omega: Complex64) -> Complex64 {
    let v = z.im / omega.im;
    let u = z.re - v * omega.re;
    omega * (v - v.floor()) + (u - u.floor())
}

/// Which kernel the functional check uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelChoice {
    Theta,
    /// `λ ≡ 1`, the negative control.
    Trivial,
}

/// Max relative residual of the `Q_{n,1}(E, τ)` relations in the functional realization.
///
/// Each orthonormal relation `Σ r_{ab} x_a x_b` is evaluated as
/// `Σ r_{ab} (θ_{−a} * θ_{−b})(x, y)` at `samples` random pairs; the residual is
/// `|Σ r_{ab} M_{ab}| / Σ |r_{ab} M_{ab}|`.
pub fn functional_relation_residual<R: Rng>(
    n: usize,
    tau: Complex64,
    m: &ModularParam,
    samples: usize,
    kernel: KernelChoice,
    rng: &mut R,
) -> Result<f64> {
    let e = ThetaEvaluator::new(*m, n)?;
    let rel = relation_space_with(&e, 1, tau)?;
    let rule = match kernel {
        KernelChoice::Theta => ProductRule::sklyanin(&e, tau),
        KernelChoice::Trivial => ProductRule::shifted(Arc::new(|_, _| Ok(Complex64::new(1.0, 0.0))), tau * 2.0),
    };
    let mut worst: f64 = 0.0;
    let mut done = 0;
    let mut failures = 0;
    while done < samples {
        let pts = [domain_point(rng, m.omega()), domain_point(rng, m.omega())];
        let table = match ProductTable::new(&rule, &e, &pts) {
            Ok(t) => t,
            Err(Error::Pole(_)) if failures < 100 => {
                failures += 1;
                continue;
            }
            Err(err) => return Err(err),
        };
        let mut vals = vec![Complex64::new(0.0, 0.0); n * n];
        for a in 0..n {
            for b in 0..n {
                vals[a * n + b] = table.monomial(&[generator_index(n, a), generator_index(n, b)]);
            }
        }
        for c in 0..rel.rank() {
            let terms = (0..n * n).map(|ab| rel.basis[(ab, c)] * vals[ab]);
            let (sum, size) = terms.fold((Complex64::new(0.0, 0.0), 0.0), |(s, z), t| (s + t, z + t.norm()));
            worst = worst.max(sum.norm() / size);
        }
        done += 1;
    }
    Ok(worst)
}

/// Associativity residual `|(f*g)*h − f*(g*h)| / max(|.|)` at random points, for
/// random degree-one theta elements and a given product.
pub fn associativity_residual<R: Rng>(
    e: &ThetaEvaluator,
    product: &dyn Fn(&SymFun, &SymFun) -> Result<SymFun>,
    symmetry: Symmetry,
    samples: usize,
    rng: &mut R,
) -> Result<f64> {
    let n = e.order();
    let gens: Vec<SymFun> = (0..3).map(|_| SymFun::theta_linear(e, random_vector(rng, n), symmetry)).collect();
    let left = product(&product(&gens[0], &gens[1])?, &gens[2])?;
    let right = product(&gens[0], &product(&gens[1], &gens[2])?)?;
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let pts: Vec<Complex64> = (0..3).map(|_| domain_point(rng, e.omega())).collect();
        let (a, b) = (left.eval(&pts)?, right.eval(&pts)?);
        worst = worst.max((a - b).norm() / a.norm().max(b.norm()));
    }
    Ok(worst)
}

/// Dimension count for a space of symmetric theta functions cut out by a diagonal condition.
#[derive(Debug, Clone, Serialize)]
pub struct CenterReport {
    pub n: usize,
    pub variables: usize,
    /// Number of points on the chain `z, z − nτ, z − 2nτ, ...`.
    pub chain: usize,
    /// `dim B_m` predicted by flatness.
    pub expected_span: usize,
    pub generic_rank: usize,
    pub constrained_rank: usize,
    pub dim: usize,
    /// Max relative residual of `w * x − x * w` over a basis of the space and all generators.
    pub commutator: Option<f64>,
}

struct DiagonalSpace {
    e: ThetaEvaluator,
    rule: ProductRule,
    gens: Vec<Vec<Vec<Complex64>>>,
    generic: CMat,
    constrained: CMat,
}

impl DiagonalSpace {
    fn build<R: Rng>(
        n: usize,
        vars: usize,
        chain: usize,
        tau: Complex64,
        m: &ModularParam,
        rng: &mut R,
    ) -> Result<Self> {
        let e = ThetaEvaluator::new(*m, n)?;
        let rule = ProductRule::sklyanin(&e, tau);
        let count = polynomial_dim(n, vars) + 16;
        let gens: Vec<Vec<Vec<Complex64>>> =
            (0..count).map(|_| (0..vars).map(|_| random_vector(rng, n)).collect()).collect();
        let rows = 3 * count;
        let om = m.omega();
        let nt = tau * n as f64;
        let mut generic = CMat::zeros(rows, count);
        let mut constrained = CMat::zeros(rows, count);
        for (target, on_chain) in [(&mut generic, false), (&mut constrained, true)] {
            let mut r = 0;
            let mut failures = 0;
            while r < rows {
                let mut pts: Vec<Complex64> = (0..vars).map(|_| domain_point(rng, om)).collect();
                if on_chain {
                    for c in 1..chain {
                        pts[c] = reduce_to_domain(pts[0] - nt * c as f64, om);
                    }
                }
                let table = match ProductTable::new(&rule, &e, &pts) {
                    Ok(t) => t,
                    Err(Error::Pole(_)) if failures < 100 => {
                        failures += 1;
                        continue;
                    }
                    Err(err) => return Err(err),
                };
                for (c, g) in gens.iter().enumerate() {
                    target[(r, c)] = table.product(g);
                }
                r += 1;
            }
            normalize_rows(target);
        }
        Ok(DiagonalSpace { e, rule, gens, generic, constrained })
    }

    fn ranks(&self) -> (usize, usize) {
        (rank_of(&singular_values(&self.generic), RANK_TOL), rank_of(&singular_values(&self.constrained), RANK_TOL))
    }

    /// Coefficients (over `gens`) of functions vanishing on the chain but not identically.
    fn vanishing_elements(&self) -> CMat {
        let kernel = null_space(&self.constrained, RANK_TOL);
        let image = &self.generic * &kernel;
        // right singular vectors of G·N with nonzero singular value
        let d = svd(&image, false);
        let keep = rank_of(&d.singular_values, RANK_TOL);
        let coeffs = &kernel * d.v.columns(0, keep);
        column_space(&coeffs, RANK_TOL)
    }

    /// Max relative residual of `w * x_a − x_a * w` over the columns `w` of `coeffs` and all
    /// generators, in `S_{λ,2τ}`; `None` when `coeffs` is empty.
    fn commutator<R: Rng>(&self, coeffs: &CMat, tau: Complex64, samples: usize, rng: &mut R) -> Result<Option<f64>> {
        if coeffs.ncols() == 0 {
            return Ok(None);
        }
        let n = self.e.order();
        let vars = self.gens[0].len();
        let lam = sklyanin_kernel(&self.e, n, tau);
        let p = tau * 2.0;
        let mut worst: f64 = 0.0;
        for col in coeffs.column_iter() {
            let w = self.as_symfun(col.iter().copied().collect());
            for a in 0..n {
                let mut unit = vec![Complex64::new(0.0, 0.0); n];
                unit[generator_index(n, a)] = Complex64::new(1.0, 0.0);
                let x = SymFun::theta_linear(&self.e, unit, Symmetry::Symmetric);
                let wx = shuffle_product(&w, &x, lam.clone(), p)?;
                let xw = shuffle_product(&x, &w, lam.clone(), p)?;
                for _ in 0..samples {
                    let pts: Vec<Complex64> = (0..=vars).map(|_| domain_point(rng, self.e.omega())).collect();
                    let (u, v) = (wx.eval(&pts)?, xw.eval(&pts)?);
                    worst = worst.max((u - v).norm() / u.norm().max(v.norm()));
                }
            }
        }
        Ok(Some(worst))
    }

    /// The element `Σ_k c_k P_k` as an evaluation-based function.
    fn as_symfun(&self, coeffs: Vec<Complex64>) -> SymFun {
        let (e, rule, gens) = (self.e.clone(), self.rule.clone(), self.gens.clone());
        let vars = gens[0].len();
        SymFun::single(vars, Symmetry::Symmetric, move |x| {
            let table = ProductTable::new(&rule, &e, x)?;
            Ok(gens.iter().zip(&coeffs).map(|(g, c)| table.product(g) * c).sum())
        })
    }
}

/// `dim W_s` for even `n`: symmetric theta functions in `ns/2` variables from
/// `B_{ns/2}` vanishing on `(z, z − nτ, …, z − snτ, …)`, with the commutator residual
/// of a basis of that space against each generator (`samples` points per pair).
pub fn center_space_even<R: Rng>(
    n: usize,
    s: usize,
    tau: Complex64,
    m: &ModularParam,
    samples: usize,
    rng: &mut R,
) -> Result<CenterReport> {
    if !n.is_multiple_of(2) || n < 2 {
        return Err(Error::Domain(format!("center_space_even needs even n, got {n}")));
    }
    if s == 0 || n * s / 2 < s + 1 {
        return Err(Error::Domain(format!("s = {s} does not fit {} variables", n * s / 2)));
    }
    let vars = n * s / 2;
    let space = DiagonalSpace::build(n, vars, s + 1, tau, m, rng)?;
    let (g, c) = space.ranks();
    let commutator = space.commutator(&space.vanishing_elements(), tau, samples, rng)?;
    Ok(CenterReport {
        n,
        variables: vars,
        chain: s + 1,
        expected_span: polynomial_dim(n, vars),
        generic_rank: g,
        constrained_rank: c,
        dim: g.saturating_sub(c),
        commutator,
    })
}

/// Odd `n`: the degree-`n` functions vanishing on `(z, z − nτ, z − 2nτ, …)`,
/// with the commutator residual of that space against each generator.
pub fn central_element_odd<R: Rng>(
    n: usize,
    tau: Complex64,
    m: &ModularParam,
    samples: usize,
    rng: &mut R,
) -> Result<CenterReport> {
    if n % 2 != 1 || n < 3 {
        return Err(Error::Domain(format!("central_element_odd needs odd n ≥ 3, got {n}")));
    }
    let space = DiagonalSpace::build(n, n, 3, tau, m, rng)?;
    let (g, c) = space.ranks();
    let coeffs = space.vanishing_elements();
    let commutator = space.commutator(&coeffs, tau, samples, rng)?;
    Ok(CenterReport {
        n,
        variables: n,
        chain: 3,
        expected_span: polynomial_dim(n, n),
        generic_rank: g,
        constrained_rank: c,
        dim: g.saturating_sub(c),
        commutator,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_of_permutations() {
        assert_eq!(perm_sign(&[0, 1, 2]), 1.0);
        assert_eq!(perm_sign(&[1, 0, 2]), -1.0);
        assert_eq!(perm_sign(&[1, 2, 0]), 1.0);
    }

    #[test]
    fn generator_labels() {
        assert_eq!(generator_index(3, 0), 0);
        assert_eq!(generator_index(3, 1), 2);
        assert_eq!(generator_index(4, 3), 1);
    }

    #[test]
    fn domain_reduction() {
        let om = Complex64::new(0.0, 1.0);
        let z = reduce_to_domain(Complex64::new(-1.3, 2.4), om);
        assert!((z - Complex64::new(0.7, 0.4)).norm() < 1e-12);
    }
}
