use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::{check_nk, RANK_TOL};
use crate::error::{Error, Result};
use crate::linalg::{column_space, max_principal_sine, rank_of, singular_values, CMat};
use crate::theta::{ModularParam, ThetaEvaluator};

/// Smallest admissible `|θ|` in a relation denominator.
pub const GENERIC_TOL: f64 = 1.0e-6;

/// The span of the quadratic relations of `Q_{n,k}(E, τ)` inside `V ⊗ V`.
///
/// Coordinates: `x_a x_b` is index `a·n + b`. `basis` holds orthonormal columns.
#[derive(Debug, Clone)]
pub struct RelationSpace {
    pub n: usize,
    pub k: usize,
    pub tau: Complex64,
    pub basis: CMat,
    pub singular_values: Vec<f64>,
    pub rank_threshold: f64,
}

impl RelationSpace {
    pub fn rank(&self) -> usize {
        self.basis.ncols()
    }
}

/// The raw `n² × n²` matrix whose row `i·n + j` is the `(i, j)` relation
/// `Σ_r θ_{j−i+(k−1)r}(0) / (θ_{j−i−r}(−τ) θ_{kr}(τ)) · x_{k(j−r)} x_{k(i+r)}`.
pub fn relation_rows(e: &ThetaEvaluator, k: usize, tau: Complex64) -> Result<CMat> {
    let n = e.order();
    check_nk(n, k)?;
    let ni = n as i64;
    let ki = k as i64;
    let zero = Complex64::new(0.0, 0.0);
    let at_zero = e.basis_all(zero)?;
    let at_minus = e.basis_all(-tau)?;
    let at_plus = e.basis_all(tau)?;
    let idx = |a: i64| a.rem_euclid(ni) as usize;
    let mut rows = CMat::zeros(n * n, n * n);
    for i in 0..ni {
        for j in 0..ni {
            for r in 0..ni {
                let den = at_minus[idx(j - i - r)] * at_plus[idx(ki * r)];
                if den.norm() < GENERIC_TOL {
                    return Err(Error::NonGeneric(format!("a relation denominator vanishes at τ = {tau}")));
                }
                let coeff = at_zero[idx(j - i + (ki - 1) * r)] / den;
                let col = idx(ki * (j - r)) * n + idx(ki * (i + r));
                rows[(idx(i) * n + idx(j), col)] += coeff;
            }
        }
    }
    Ok(rows)
}

/// The relation space of `Q_{n,k}(E, τ)` with its numerical rank.
///
/// ```
/// use elliptic_sklyanin::sklyanin::relation_tensor;
/// use elliptic_sklyanin::theta::ModularParam;
/// use num_complex::Complex64;
/// let r = relation_tensor(3, 1, Complex64::new(0.17, 0.11), &ModularParam::square()).unwrap();
/// assert_eq!(r.rank(), 3);
/// ```
pub fn relation_tensor(n: usize, k: usize, tau: Complex64, m: &ModularParam) -> Result<RelationSpace> {
    let e = ThetaEvaluator::new(*m, n)?;
    relation_space_with(&e, k, tau)
}

pub fn relation_space_with(e: &ThetaEvaluator, k: usize, tau: Complex64) -> Result<RelationSpace> {
    let rows = relation_rows(e, k, tau)?;
    let cols = rows.transpose();
    let sv = singular_values(&cols);
    let basis = column_space(&cols, RANK_TOL);
    Ok(RelationSpace { n: e.order(), k, tau, basis, singular_values: sv, rank_threshold: RANK_TOL })
}

/// `dim A_l` for `l = 1, 2, 3`.
pub fn graded_dim(r: &RelationSpace, l: u8) -> Result<usize> {
    let n = r.n;
    match l {
        1 => Ok(n),
        2 => Ok(n * n - r.rank()),
        3 => {
            let q = r.rank();
            let mut span = CMat::zeros(n * n * n, 2 * q * n);
            for c in 0..q {
                for x in 0..n {
                    for ab in 0..n * n {
                        let v = r.basis[(ab, c)];
                        // R ⊗ V: (ab) then x;  V ⊗ R: x then (ab)
                        span[(ab * n + x, 2 * (c * n + x))] = v;
                        span[(x * n * n + ab, 2 * (c * n + x) + 1)] = v;
                    }
                }
            }
            Ok(n * n * n - rank_of(&singular_values(&span), r.rank_threshold))
        }
        _ => Err(Error::Domain(format!("graded dimensions are measured for l ≤ 3, got {l}"))),
    }
}

/// `n (n+1) ... (n+l-1) / l!`, the size of the degree-`l` part of a polynomial ring.
pub fn polynomial_dim(n: usize, l: usize) -> usize {
    (0..l).fold(1usize, |acc, i| acc * (n + i) / (i + 1))
}

/// Degree-`l` dimensions together with the rank threshold used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    pub dims: BTreeMap<u8, usize>,
    pub rank_threshold_exp: i32,
}

/// Flatness measured at two independent generic `τ`.
#[derive(Debug, Clone, Serialize)]
pub struct FlatnessReport {
    pub n: usize,
    pub k: usize,
    pub taus: [[f64; 2]; 2],
    pub relation_rank: usize,
    pub dims: GradedDims,
    /// Whether every rank agreed between the two `τ`.
    pub agree: bool,
}

impl FlatnessReport {
    /// Ranks agree and every measured dimension equals the polynomial-ring value.
    pub fn is_flat(&self) -> bool {
        self.agree
            && self.relation_rank == self.n * (self.n - 1) / 2
            && self.dims.dims.iter().all(|(&l, &d)| d == polynomial_dim(self.n, l as usize))
    }
}

/// Draws `τ = a + bω` with `a, b` uniform in `[0.05, 0.45]`, resampling until all
/// relation denominators are away from zero.
pub fn generic_tau<R: Rng>(e: &ThetaEvaluator, k: usize, rng: &mut R) -> Result<Complex64> {
    for _ in 0..100 {
        let a: f64 = rng.gen_range(0.05..0.45);
        let b: f64 = rng.gen_range(0.05..0.45);
        let tau = e.omega() * b + a;
        match relation_rows(e, k, tau) {
            Ok(_) => return Ok(tau),
            Err(Error::NonGeneric(_)) => continue,
            Err(other) => return Err(other),
        }
    }
    Err(Error::NonGeneric("no generic τ found in 100 draws".into()))
}

/// Relation rank and `dim A_1..A_max_degree`, each computed at two generic `τ`.
pub fn flatness<R: Rng>(n: usize, k: usize, m: &ModularParam, max_degree: u8, rng: &mut R) -> Result<FlatnessReport> {
    let e = ThetaEvaluator::new(*m, n)?;
    let t1 = generic_tau(&e, k, rng)?;
    let t2 = generic_tau(&e, k, rng)?;
    let (r1, r2) = (relation_space_with(&e, k, t1)?, relation_space_with(&e, k, t2)?);
    let mut agree = r1.rank() == r2.rank();
    let mut dims = BTreeMap::new();
    for l in 1..=max_degree {
        let (d1, d2) = (graded_dim(&r1, l)?, graded_dim(&r2, l)?);
        agree &= d1 == d2;
        dims.insert(l, d1);
    }
    Ok(FlatnessReport {
        n,
        k,
        taus: [[t1.re, t1.im], [t2.re, t2.im]],
        relation_rank: r1.rank(),
        dims: GradedDims { dims, rank_threshold_exp: RANK_TOL.log10().round() as i32 },
        agree,
    })
}

/// Acts by `g ⊗ g` on the columns of `basis`, for `g` given as an `n × n` matrix.
fn act_on_pairs(g: &CMat, basis: &CMat) -> CMat {
    let n = g.nrows();
    let mut out = CMat::zeros(n * n, basis.ncols());
    for c in 0..basis.ncols() {
        for a in 0..n {
            for b in 0..n {
                let v = basis[(a * n + b, c)];
                if v == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for a2 in 0..n {
                    let ga = g[(a2, a)];
                    if ga.norm() == 0.0 {
                        continue;
                    }
                    for b2 in 0..n {
                        out[(a2 * n + b2, c)] += ga * g[(b2, b)] * v;
                    }
                }
            }
        }
    }
    out
}

/// The two Heisenberg generators on `V`: `x_a ↦ x_{a+1}` and `x_a ↦ ε^a x_a`.
pub fn heisenberg_generators(n: usize) -> [CMat; 2] {
    let mut shift = CMat::zeros(n, n);
    let mut diag = CMat::zeros(n, n);
    for a in 0..n {
        shift[((a + 1) % n, a)] = Complex64::new(1.0, 0.0);
        diag[(a, a)] = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * a as f64 / n as f64);
    }
    [shift, diag]
}

/// Largest principal-angle sine between the relation span and its image
/// under each matrix in `actions` (acting diagonally on `V ⊗ V`).
pub fn invariance_residual(r: &RelationSpace, actions: &[CMat]) -> f64 {
    actions
        .iter()
        .map(|g| {
            let moved = column_space(&act_on_pairs(g, &r.basis), RANK_TOL);
            max_principal_sine(&r.basis, &moved)
        })
        .fold(0.0, f64::max)
}

/// Invariance of the relation span under the Heisenberg group `Γ_n`.
pub fn heisenberg_check(r: &RelationSpace) -> f64 {
    invariance_residual(r, &heisenberg_generators(r.n))
}

/// Orthonormal basis of `Λ²V = span{x_a x_b − x_b x_a}`.
pub fn antisymmetric_subspace(n: usize) -> CMat {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut out = CMat::zeros(n * n, pairs.len());
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    for (c, &(a, b)) in pairs.iter().enumerate() {
        out[(a * n + b, c)] = s;
        out[(b * n + a, c)] = -s;
    }
    out
}

/// Principal-angle sine between `R(t·dir)` and `Λ²V` for each `t`.
pub fn classical_limit_angles(n: usize, k: usize, m: &ModularParam, dir: Complex64, ts: &[f64]) -> Result<Vec<f64>> {
    let e = ThetaEvaluator::new(*m, n)?;
    let lambda2 = antisymmetric_subspace(n);
    ts.iter()
        .map(|&t| {
            let r = relation_space_with(&e, k, dir * t)?;
            Ok(max_principal_sine(&r.basis, &lambda2))
        })
        .collect()
}
