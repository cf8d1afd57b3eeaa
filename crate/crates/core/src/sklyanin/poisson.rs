use std::collections::BTreeMap;

use num_complex::Complex64;

use super::check_nk;
use super::relations::relation_space_with;
use crate::error::{Error, Result};
use crate::linalg::{singular_values, CMat};
use crate::theta::{ModularParam, ThetaEvaluator};

/// Quadratic Poisson bracket `{x_i, x_j} = Σ_{a,b} c_{ij}^{ab} x_a x_b`.
///
/// `c[i][j]` is the symmetric `n × n` form flattened as `a·n + b`;
/// `c[j][i] = −c[i][j]` and `c[i][i] = 0` hold exactly.
#[derive(Debug, Clone)]
pub struct PoissonTensor {
    pub n: usize,
    pub k: usize,
    pub h: f64,
    pub c: Vec<Vec<Vec<Complex64>>>,
}

/// For each `i < j`, the unique `r ∈ R(τ)` with antisymmetric part `x_i x_j − x_j x_i`;
/// returns the symmetric parts, indexed by pair.
fn symmetric_parts(e: &ThetaEvaluator, k: usize, tau: Complex64) -> Result<Vec<Vec<Complex64>>> {
    let n = e.order();
    let r = relation_space_with(e, k, tau)?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    if r.rank() != pairs.len() {
        return Err(Error::NonGeneric(format!("relation rank {} at τ = {tau}", r.rank())));
    }
    let q = pairs.len();
    let mut anti = CMat::zeros(q, q);
    for (p, &(a, b)) in pairs.iter().enumerate() {
        for c in 0..q {
            anti[(p, c)] = (r.basis[(a * n + b, c)] - r.basis[(b * n + a, c)]) * 0.5;
        }
    }
    let sv = singular_values(&anti);
    if sv.last().copied().unwrap_or(0.0) < 1e-10 * sv[0] {
        return Err(Error::Numerical("antisymmetric projection is singular: h too large or τ degenerate".into()));
    }
    let inv = anti.try_inverse().ok_or_else(|| Error::Numerical("antisymmetric projection is singular".into()))?;
    let lifts = &r.basis * inv;
    Ok((0..q)
        .map(|p| {
            let v = lifts.column(p);
            let mut s = vec![Complex64::new(0.0, 0.0); n * n];
            for a in 0..n {
                for b in 0..n {
                    s[a * n + b] = (v[a * n + b] + v[b * n + a]) * 0.5;
                }
            }
            s
        })
        .collect())
}

/// Central-difference Poisson bracket of the family `τ ↦ Q_{n,k}(E, τ)` at `τ = 0`,
/// with `τ = ±h` real.
pub fn poisson_from_family(n: usize, k: usize, m: &ModularParam, h: f64) -> Result<PoissonTensor> {
    check_nk(n, k)?;
    if !(h > 0.0 && h < 0.5) {
        return Err(Error::Domain(format!("step h = {h} must lie in (0, 0.5)")));
    }
    let e = ThetaEvaluator::new(*m, n)?;
    let plus = symmetric_parts(&e, k, Complex64::new(h, 0.0))?;
    let minus = symmetric_parts(&e, k, Complex64::new(-h, 0.0))?;
    let zero = vec![Complex64::new(0.0, 0.0); n * n];
    let mut c = vec![vec![zero; n]; n];
    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    for ((i, j), (pl, mi)) in pairs.zip(plus.iter().zip(&minus)) {
        let d: Vec<Complex64> = pl.iter().zip(mi).map(|(a, b)| (a - b) / (2.0 * h)).collect();
        c[j][i] = d.iter().map(|v| -v).collect();
        c[i][j] = d;
    }
    Ok(PoissonTensor { n, k, h, c })
}

/// Sorted multi-index monomials of degree `d` in `n` variables.
fn monomials(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(n: usize, d: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for a in start..n {
            cur.push(a);
            rec(n, d, a, cur, out);
            cur.pop();
        }
    }
    rec(n, d, 0, &mut cur, &mut out);
    out
}

/// A polynomial as a map from sorted exponent lists to coefficients.
type Poly = BTreeMap<Vec<usize>, Complex64>;

fn add_term(p: &mut Poly, mut mono: Vec<usize>, c: Complex64) {
    mono.sort_unstable();
    *p.entry(mono).or_insert(Complex64::new(0.0, 0.0)) += c;
}

impl PoissonTensor {
    /// `{x_i, x_a}` as a polynomial.
    fn bracket_generators(&self, i: usize, a: usize) -> Poly {
        let n = self.n;
        let mut p = Poly::new();
        for x in 0..n {
            for y in 0..n {
                let c = self.c[i][a][x * n + y];
                if c != Complex64::new(0.0, 0.0) {
                    add_term(&mut p, vec![x, y], c);
                }
            }
        }
        p
    }

    /// `{x_i, f}` by the Leibniz rule.
    pub fn bracket_with_generator(&self, i: usize, f: &Poly) -> Poly {
        let mut out = Poly::new();
        for (mono, &coef) in f {
            for pos in 0..mono.len() {
                let rest: Vec<usize> = mono.iter().enumerate().filter(|&(q, _)| q != pos).map(|(_, &v)| v).collect();
                for (m2, c2) in self.bracket_generators(i, mono[pos]) {
                    let mut full = rest.clone();
                    full.extend(m2);
                    add_term(&mut out, full, coef * c2);
                }
            }
        }
        out
    }

    /// Largest structure constant in absolute value.
    pub fn scale(&self) -> f64 {
        self.c.iter().flatten().flatten().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Max coefficient of `{x_i,{x_j,x_k}} + cyclic` over all triples, relative to `scale()²`.
    pub fn jacobi_residual(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut total = Poly::new();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = self.bracket_generators(b, c);
                        for (mono, v) in self.bracket_with_generator(a, &inner) {
                            add_term(&mut total, mono, v);
                        }
                    }
                    worst = worst.max(total.values().map(|v| v.norm()).fold(0.0, f64::max));
                }
            }
        }
        let s = self.scale();
        if s == 0.0 {
            0.0
        } else {
            worst / (s * s)
        }
    }

    /// Degree-`d` Casimirs: polynomials `f` with `{x_i, f} = 0` for all `i`.
    ///
    /// Returns singular values of the map `f ↦ ({x_i, f})_i`, normalized by the
    /// largest one and sorted decreasingly; the Casimir dimension is the number
    /// below a chosen tolerance.
    pub fn casimir_spectrum(&self, d: usize) -> Vec<f64> {
        let n = self.n;
        let cols = monomials(n, d);
        let rows = monomials(n, d + 1);
        let row_index: BTreeMap<&Vec<usize>, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut mat = CMat::zeros(n * rows.len(), cols.len());
        for (c, mono) in cols.iter().enumerate() {
            let f: Poly = [(mono.clone(), Complex64::new(1.0, 0.0))].into_iter().collect();
            for i in 0..n {
                for (m2, v) in self.bracket_with_generator(i, &f) {
                    mat[(i * rows.len() + row_index[&m2], c)] = v;
                }
            }
        }
        let sv = singular_values(&mat);
        let top = sv.first().copied().unwrap_or(1.0);
        let mut out: Vec<f64> = sv.iter().map(|s| s / top).collect();
        // the SVD of a wide matrix omits the trailing zeros
        out.resize(cols.len(), 0.0);
        out
    }
}

/// Casimir summary at one degree.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CasimirReport {
    pub degree: usize,
    pub dim: usize,
    /// Largest relative singular value counted as a Casimir.
    pub residual: f64,
    /// Smallest relative singular value not counted.
    pub gap: f64,
}

/// Casimirs counted with threshold `tol` on the relative singular values.
pub fn casimirs(p: &PoissonTensor, degree: usize, tol: f64) -> CasimirReport {
    let sv = p.casimir_spectrum(degree);
    let dim = sv.iter().filter(|&&s| s <= tol).count();
    let residual = sv.iter().copied().filter(|&s| s <= tol).fold(0.0, f64::max);
    let gap = sv.iter().copied().filter(|&s| s > tol).fold(f64::INFINITY, f64::min);
    CasimirReport { degree, dim, residual, gap }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(4, 3).len(), 20);
    }

    #[test]
    fn antisymmetric_by_construction() {
        let p = poisson_from_family(3, 1, &ModularParam::square(), 1e-3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for ab in 0..9 {
                    assert_eq!(p.c[i][j][ab], -p.c[j][i][ab]);
                }
            }
        }
    }
}
