use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::functional::{domain_point, ProductRule, ProductTable};
use super::relations::relation_space_with;
use super::RANK_TOL;
use crate::error::{Error, Result};
use crate::linalg::{column_space, max_principal_sine, normalize_rows, rank_of, singular_values, CMat};
use crate::theta::{ModularParam, ThetaEvaluator};

/// Scale `s = q^{1/3}/Π_{m≥1}(1 − q^m)`, `q = e^{2πiω}`, under which the order-3 basis
/// `s·θ_a` satisfies the cubic relations with the coefficients as displayed below.
///
/// The cubic relations are not homogeneous in the basis, so they fix its scale; the
/// quadratic relations and every other check are insensitive to it.
pub fn t3_basis_scale(m: &ModularParam) -> Complex64 {
    let q = (Complex64::new(0.0, 2.0 * PI) * m.omega()).exp();
    let mut euler = Complex64::new(1.0, 0.0);
    let mut qm = q;
    while qm.norm() > 1e-18 {
        euler *= 1.0 - qm;
        qm *= q;
    }
    (Complex64::new(0.0, 2.0 * PI / 3.0) * m.omega()).exp() / euler
}

type Vectors = Vec<Vec<Complex64>>;

/// The degree-two elements `C_α = θ_0(4τ)x_α² + θ_1(4τ)x_{α+2}x_{α+1} + θ_2(4τ)x_{α+1}x_{α+2}`
/// (as vectors in `V ⊗ V`) and the nine cubic relations
/// `e^{6πiτ}θ_α(3τ) x_β C_{α+β} − Σ_{m} θ_{α+m}(τ) c_m C_{α+β+m} x_{β+m}` (in `V^{⊗3}`),
/// with `c_0 = θ_1(2τ)θ_2(2τ)`, `c_1 = θ_0(2τ)θ_1(2τ)`, `c_2 = θ_2(2τ)θ_0(2τ)`,
/// where `θ_a` is the rescaled basis `s·θ_a` of [`t3_basis_scale`].
pub fn t3_relation_vectors(e: &ThetaEvaluator, tau: Complex64) -> Result<(Vectors, Vectors)> {
    if e.order() != 3 {
        return Err(Error::Domain("T_3 relations need the order-3 theta basis".into()));
    }
    let s = t3_basis_scale(e.modular());
    let th = |z: Complex64| e.basis_all(z).map(|v| v.into_iter().map(|x| x * s).collect::<Vec<_>>());
    let (t1, t2, t3, t4) = (th(tau)?, th(tau * 2.0)?, th(tau * 3.0)?, th(tau * 4.0)?);
    let m3 = |a: usize| a % 3;
    let quad: Vec<Vec<Complex64>> = (0..3)
        .map(|al| {
            let mut v = vec![Complex64::new(0.0, 0.0); 9];
            v[al * 3 + al] += t4[0];
            v[m3(al + 2) * 3 + m3(al + 1)] += t4[1];
            v[m3(al + 1) * 3 + m3(al + 2)] += t4[2];
            v
        })
        .collect();
    let c = [t2[1] * t2[2], t2[0] * t2[1], t2[2] * t2[0]];
    let phase = (Complex64::new(0.0, 6.0 * PI) * tau).exp();
    let mut cubic = Vec::with_capacity(9);
    for al in 0..3 {
        for be in 0..3 {
            let mut v = vec![Complex64::new(0.0, 0.0); 27];
            let left = phase * t3[al];
            for ab in 0..9 {
                v[be * 9 + ab] += left * quad[m3(al + be)][ab];
            }
            for mm in 0..3 {
                let coef = t1[m3(al + mm)] * c[mm];
                let gamma = m3(al + be + mm);
                let last = m3(be + mm);
                for ab in 0..9 {
                    v[ab * 3 + last] -= coef * quad[gamma][ab];
                }
            }
            cubic.push(v);
        }
    }
    Ok((quad, cubic))
}

/// Principal-angle sine between `span{C_α}` and the relation space of `Q_3(E, 4τ)`.
pub fn t3_quadratic_angle(tau: Complex64, m: &ModularParam) -> Result<f64> {
    let e = ThetaEvaluator::new(*m, 3)?;
    let (quad, _) = t3_relation_vectors(&e, tau)?;
    let mut mat = CMat::zeros(9, 3);
    for (c, v) in quad.iter().enumerate() {
        for (r, x) in v.iter().enumerate() {
            mat[(r, c)] = *x;
        }
    }
    let q = column_space(&mat, RANK_TOL);
    let target = relation_space_with(&e, 1, tau * 4.0)?;
    Ok(max_principal_sine(&q, &target.basis))
}

/// Outcome of the `T_3` checks.
#[derive(Debug, Clone, Serialize)]
pub struct T3Report {
    /// Max relative residual of the nine cubic relations in the `T_3` realization.
    pub cubic_residual: f64,
    /// Principal-angle sine between the quadratic parts and `R(4τ)`.
    pub quadratic_angle: f64,
    /// `dim A_2` and `dim A_3` of the realization.
    pub dim2: usize,
    pub dim3: usize,
    /// Sine of the angle between the relation span and the realization's degree-3 kernel.
    pub kernel_angle: f64,
}

/// Evaluates every degree-`d` monomial `x_{a_1}···x_{a_d}` (with `x_a ↦ θ_a`) at `rows` random tuples.
fn monomial_matrix<R: Rng>(e: &ThetaEvaluator, rule: &ProductRule, d: usize, rows: usize, rng: &mut R) -> Result<CMat> {
    let n = e.order();
    let total = n.pow(d as u32);
    let mut mat = CMat::zeros(rows, total);
    let mut r = 0;
    let mut failures = 0;
    while r < rows {
        let pts: Vec<Complex64> = (0..d).map(|_| domain_point(rng, e.omega())).collect();
        let table = match ProductTable::new(rule, e, &pts) {
            Ok(t) => t,
            Err(Error::Pole(_)) if failures < 100 => {
                failures += 1;
                continue;
            }
            Err(err) => return Err(err),
        };
        for col in 0..total {
            let idx: Vec<usize> = (0..d).map(|p| col / n.pow((d - 1 - p) as u32) % n).collect();
            mat[(r, col)] = table.monomial(&idx);
        }
        r += 1;
    }
    Ok(mat)
}

/// The `T_3` checks: the cubic relations evaluated in the skew realization (`x_a ↦ θ_a`), the quadratic
/// identification with `Q_3(E, 4τ)`, and the realization's own degree-2/3 sizes.
pub fn t3_relation_residual<R: Rng>(tau: Complex64, m: &ModularParam, samples: usize, rng: &mut R) -> Result<T3Report> {
    let e = ThetaEvaluator::new(*m, 3)?;
    let rule = ProductRule::tn(&e, tau);
    let (_, cubic) = t3_relation_vectors(&e, tau)?;
    let vals = monomial_matrix(&e, &rule, 3, samples.max(1), rng)?;
    let mut worst: f64 = 0.0;
    for rel in &cubic {
        for row in vals.row_iter() {
            let (sum, size) = rel
                .iter()
                .zip(row.iter())
                .fold((Complex64::new(0.0, 0.0), 0.0), |(s, z), (a, b)| (s + a * b, z + (a * b).norm()));
            worst = worst.max(sum.norm() / size);
        }
    }
    let mut deg2 = monomial_matrix(&e, &rule, 2, 27, rng)?;
    normalize_rows(&mut deg2);
    let mut deg3 = monomial_matrix(&e, &rule, 3, 81, rng)?;
    normalize_rows(&mut deg3);
    let dim2 = rank_of(&singular_values(&deg2), RANK_TOL);
    let dim3 = rank_of(&singular_values(&deg3), RANK_TOL);
    // relation span versus the kernel of the degree-3 evaluation map
    let mut rels = CMat::zeros(27, cubic.len());
    for (c, v) in cubic.iter().enumerate() {
        for (r, x) in v.iter().enumerate() {
            rels[(r, c)] = *x;
        }
    }
    let rel_basis = column_space(&rels, RANK_TOL);
    let image = &deg3 * &rel_basis;
    let kernel_angle = singular_values(&image).first().copied().unwrap_or(0.0).min(1.0);
    Ok(T3Report { cubic_residual: worst, quadratic_angle: t3_quadratic_angle(tau, m)?, dim2, dim3, kernel_angle })
}
