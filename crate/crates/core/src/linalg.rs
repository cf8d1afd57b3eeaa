//! Dense complex linear algebra used by the numerical checks: SVD rank,
//! orthonormal bases, null spaces and principal angles.

use faer::{Mat, MatRef};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type CMat = DMatrix<Complex64>;

/// Singular value decomposition `m = U diag(s) Vᴴ`, singular values decreasing.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: CMat,
    pub singular_values: Vec<f64>,
    pub v: CMat,
}

fn to_faer(m: &CMat) -> Mat<Complex64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn from_faer(m: MatRef<'_, Complex64>) -> CMat {
    CMat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// SVD of `m`; thin (`min(r, c)` columns in `U` and `V`) unless `full`.
///
/// # Panics
/// If the iteration fails to converge, which only happens for non-finite input.
pub fn svd(m: &CMat, full: bool) -> Svd {
    let f = to_faer(m);
    let (u, s, v) = if full {
        let d = f.svd().expect("SVD of a finite matrix converges");
        (from_faer(d.U()), d.S().column_vector().iter().map(|z| z.re).collect(), from_faer(d.V()))
    } else {
        let d = f.thin_svd().expect("SVD of a finite matrix converges");
        (from_faer(d.U()), d.S().column_vector().iter().map(|z| z.re).collect(), from_faer(d.V()))
    };
    Svd { u, singular_values: s, v }
}

/// Singular values in decreasing order.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s = to_faer(m).singular_values().expect("SVD of a finite matrix converges");
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Number of singular values above `rel_tol · σ_max`.
pub fn numerical_rank(m: &CMat, rel_tol: f64) -> usize {
    rank_of(&singular_values(m), rel_tol)
}

pub fn rank_of(sv: &[f64], rel_tol: f64) -> usize {
    match sv.first() {
        Some(&top) if top > 0.0 => sv.iter().filter(|&&s| s > rel_tol * top).count(),
        _ => 0,
    }
}

/// Orthonormal basis (as columns) of the column space of `m`.
pub fn column_space(m: &CMat, rel_tol: f64) -> CMat {
    if m.nrows() == 0 || m.ncols() == 0 {
        return CMat::zeros(m.nrows(), 0);
    }
    let d = svd(m, false);
    let rank = rank_of(&d.singular_values, rel_tol);
    d.u.columns(0, rank).into_owned()
}

/// Orthonormal basis (as columns) of `{v : m v = 0}`, numerically.
pub fn null_space(m: &CMat, rel_tol: f64) -> CMat {
    let cols = m.ncols();
    if m.nrows() == 0 {
        return CMat::identity(cols, cols);
    }
    let d = svd(m, true);
    let rank = rank_of(&d.singular_values, rel_tol);
    d.v.columns(rank, cols - rank).into_owned()
}

/// Sine of the largest principal angle between the column spans of two
/// matrices with orthonormal columns; `1` if the dimensions differ.
pub fn max_principal_sine(q1: &CMat, q2: &CMat) -> f64 {
    if q1.ncols() != q2.ncols() {
        return 1.0;
    }
    if q1.ncols() == 0 {
        return 0.0;
    }
    let resid = q1 - q2 * (q2.adjoint() * q1);
    singular_values(&resid).first().copied().unwrap_or(0.0).min(1.0)
}

/// Scales each row to unit Euclidean norm (zero rows are left alone).
pub fn normalize_rows(m: &mut CMat) {
    for mut row in m.row_iter_mut() {
        let norm = row.norm();
        if norm > 0.0 {
            row /= Complex64::new(norm, 0.0);
        }
    }
}

/// Standard complex Gaussian entry (`E|z|² = 1`).
pub fn gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) / std::f64::consts::SQRT_2
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| gaussian(rng)).collect()
}
