//! Theta functions on `E = ℂ / (ℤ + ℤω)` by truncated q-series.
//!
//! Conventions (see the book chapter "Theta conventions" for the derivations):
//!
//! * `θ(z) = c⁻¹ Σ_m exp(πiω(m+½)² + 2πi(m+½)(z+½))`, with `c` chosen so `θ'(0) = 1`.
//!   It is odd, vanishes exactly on the lattice, and
//!   `θ(z+1) = −θ(z)`, `θ(z+ω) = −e^{−πiω} e^{−2πiz} θ(z)`.
//! * `θ_a(z) = Σ_{j ≡ a (n)} exp(πiω j(j−n)/n + 2πij(z + ½ + d_n))` with
//!   `d_n = 0` for odd `n`, `d_n = 1/(2n)` for even `n`. Then `θ_0(0) = 0`,
//!   `θ_a(z+1) = θ_a(z)`, `θ_a(z+ω) = e^{−2πin(z+½+d_n)} θ_a(z)`,
//!   `θ_a(z+1/n) = e^{2πia/n} θ_a(z)` and
//!   `θ_a(z+ω/n) = e^{πiω(n−1)/n} e^{−2πi(z+½+d_n)} θ_{a+1}(z)`.
//!
//! Arguments are reduced to `|Im z| ≤ Im ω / 2` before summation and the
//! quasi-period factor is applied in closed form.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Largest number of `ω`-periods an argument may be moved by during reduction.
const MAX_REDUCTION: f64 = 1.0e4;

/// Absolute size of `θ(x − y)` below which kernels report a pole.
pub const POLE_TOL: f64 = 1.0e-12;

/// The lattice `ℤ + ℤω` together with a series cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModularParam {
    omega: Complex64,
    trunc_tol: f64,
}

impl ModularParam {
    pub fn new(omega: Complex64, trunc_tol: f64) -> Result<Self> {
        if !omega.re.is_finite() || !omega.im.is_finite() || omega.im <= 0.0 {
            return Err(Error::Domain(format!("need Im ω > 0, got {omega}")));
        }
        if !(trunc_tol > 0.0 && trunc_tol < 1.0) {
            return Err(Error::Domain(format!("truncation tolerance {trunc_tol} not in (0, 1)")));
        }
        Ok(ModularParam { omega, trunc_tol })
    }

    /// `ω` with the default cutoff `1e-16`.
    pub fn with_omega(omega: Complex64) -> Result<Self> {
        Self::new(omega, 1.0e-16)
    }

    /// The square lattice `ω = i`.
    pub fn square() -> Self {
        ModularParam { omega: I, trunc_tol: 1.0e-16 }
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    pub fn trunc_tol(&self) -> f64 {
        self.trunc_tol
    }

    /// Writes `z = z' + m ω + l` with `|Im z'| ≤ Im ω / 2`, `0 ≤ Re z' − (Im z'/Im ω) Re ω < 1`.
    fn reduce(&self, z: Complex64) -> Result<(Complex64, i64, i64)> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::Numerical(format!("non-finite argument {z}")));
        }
        let mf = (z.im / self.omega.im).round();
        if mf.abs() > MAX_REDUCTION {
            return Err(Error::Numerical(format!(
                "argument {z} lies {mf} periods away; the quasi-period factor overflows"
            )));
        }
        let m = mf as i64;
        let w = z - self.omega * mf;
        let l = w.re.floor();
        Ok((w - l, m, l as i64))
    }

    /// Sums `Σ_{j ≡ a (n)} exp(f(j))` symmetrically around the dominant index.
    fn lattice_sum(&self, n: i64, a: i64, centre: f64, f: impl Fn(f64) -> Complex64) -> Complex64 {
        let start = a.rem_euclid(n) + n * ((centre - a.rem_euclid(n) as f64) / n as f64).round() as i64;
        let mut total = f(start as f64).exp();
        let mut biggest = total.norm();
        let mut step = 1;
        loop {
            let lo = f((start - n * step) as f64).exp();
            let hi = f((start + n * step) as f64).exp();
            total += lo + hi;
            let size = lo.norm().max(hi.norm());
            biggest = biggest.max(size);
            if step >= 2 && size <= self.trunc_tol * biggest {
                break;
            }
            step += 1;
        }
        total
    }

    /// The unnormalized order-one series at a reduced argument.
    fn raw_theta1(&self, z: Complex64) -> Complex64 {
        let om = self.omega;
        // exponent real part is maximal near m + 1/2 = -Im z / Im ω
        let centre = -z.im / om.im - 0.5;
        self.lattice_sum(1, 0, centre, |m| {
            let h = m + 0.5;
            I * PI * om * h * h + 2.0 * PI * I * h * (z + 0.5)
        })
    }

    fn raw_theta1_derivative_at_zero(&self) -> Complex64 {
        let om = self.omega;
        let mut total = Complex64::new(0.0, 0.0);
        let mut biggest: f64 = 0.0;
        for m in 0i64.. {
            let mut size: f64 = 0.0;
            for h in [m as f64 + 0.5, -(m as f64) - 0.5] {
                let t = 2.0 * PI * I * h * (I * PI * om * h * h + PI * I * h).exp();
                size = size.max(t.norm());
                total += t;
            }
            biggest = biggest.max(size);
            if m >= 2 && size <= self.trunc_tol * biggest {
                break;
            }
        }
        total
    }
}

/// Evaluator for the order-one theta function and the order-`n` basis at a fixed lattice.
#[derive(Debug, Clone)]
pub struct ThetaEvaluator {
    modular: ModularParam,
    order: usize,
    norm: Complex64,
    shift: f64,
}

impl ThetaEvaluator {
    pub fn new(modular: ModularParam, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Domain("theta order must be positive".into()));
        }
        let norm = modular.raw_theta1_derivative_at_zero();
        let shift = if order.is_multiple_of(2) { 0.5 / order as f64 } else { 0.0 };
        Ok(ThetaEvaluator { modular, order, norm, shift })
    }

    pub fn modular(&self) -> &ModularParam {
        &self.modular
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn omega(&self) -> Complex64 {
        self.modular.omega
    }

    /// The characteristic shift `d_n`.
    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// The odd order-one theta function, `θ'(0) = 1`.
    ///
    /// ```
    /// use elliptic_sklyanin::theta::{ModularParam, ThetaEvaluator};
    /// use num_complex::Complex64;
    /// let e = ThetaEvaluator::new(ModularParam::square(), 1).unwrap();
    /// let z = Complex64::new(0.3, 0.2);
    /// assert!((e.theta1(z).unwrap() + e.theta1(-z).unwrap()).norm() < 1e-12);
    /// assert!(e.theta1(Complex64::new(0.0, 0.0)).unwrap().norm() < 1e-15);
    /// ```
    pub fn theta1(&self, z: Complex64) -> Result<Complex64> {
        let om = self.modular.omega;
        let (w, m, l) = self.modular.reduce(z)?;
        let mf = m as f64;
        // θ(w + mω) = (−1)^m e^{−2πimw − πiωm²} θ(w);  θ(u + l) = (−1)^l θ(u)
        let sign = if (m + l).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let factor = (-2.0 * PI * I * mf * w - PI * I * om * mf * mf).exp() * sign;
        Ok(factor * self.modular.raw_theta1(w) / self.norm)
    }

    /// `θ_a(z)` for the order-`n` basis, `a` read mod `n`.
    ///
    /// ```
    /// use elliptic_sklyanin::theta::{ModularParam, ThetaEvaluator};
    /// use num_complex::Complex64;
    /// let e = ThetaEvaluator::new(ModularParam::square(), 3).unwrap();
    /// assert!(e.basis(0, Complex64::new(0.0, 0.0)).unwrap().norm() < 1e-14);
    /// assert!(e.basis(1, Complex64::new(0.0, 0.0)).unwrap().norm() > 1e-3);
    /// ```
    pub fn basis(&self, a: i64, z: Complex64) -> Result<Complex64> {
        let n = self.order as i64;
        let nf = n as f64;
        let om = self.modular.omega;
        let (w, m, _) = self.modular.reduce(z)?;
        let mf = m as f64;
        let c = w + 0.5 + self.shift;
        // exponent real part −π Im ω j(j−n)/n − 2π j Im w is maximal near j = n/2 − n Im w / Im ω
        let centre = nf / 2.0 - nf * w.im / om.im;
        let raw = self.modular.lattice_sum(n, a, centre, |j| I * PI * om * j * (j - nf) / nf + 2.0 * PI * I * j * c);
        // θ_a(c + mω) = e^{−2πin(m c + ω m(m−1)/2)} θ_a(c) in the shifted variable
        let factor = (-2.0 * PI * I * nf * (mf * c + om * mf * (mf - 1.0) / 2.0)).exp();
        Ok(factor * raw)
    }

    /// All `n` basis values at `z`, in index order.
    pub fn basis_all(&self, z: Complex64) -> Result<Vec<Complex64>> {
        (0..self.order as i64).map(|a| self.basis(a, z)).collect()
    }

    /// Factor `F` with `θ(z + ω) = F · θ(z)`.
    pub fn theta1_omega_factor(&self, z: Complex64) -> Complex64 {
        -(-PI * I * self.modular.omega).exp() * (-2.0 * PI * I * z).exp()
    }

    /// Factor `F` with `θ_a(z + ω) = F · θ_a(z)` (independent of `a`).
    pub fn basis_omega_factor(&self, z: Complex64) -> Complex64 {
        let n = self.order as f64;
        (-2.0 * PI * I * n * (z + 0.5 + self.shift)).exp()
    }

    /// Factor `F` with `θ_a(z + 1/n) = F · θ_a(z)`.
    pub fn basis_character(&self, a: i64) -> Complex64 {
        let n = self.order as i64;
        (2.0 * PI * I * a.rem_euclid(n) as f64 / n as f64).exp()
    }

    /// Factor `F` with `θ_a(z + ω/n) = F · θ_{a+1}(z)`.
    pub fn basis_index_shift_factor(&self, z: Complex64) -> Complex64 {
        let n = self.order as f64;
        (PI * I * self.modular.omega * (n - 1.0) / n).exp() * (-2.0 * PI * I * (z + 0.5 + self.shift)).exp()
    }
}

/// `θ(z)` at the lattice `m`.
pub fn theta1(z: Complex64, m: &ModularParam) -> Result<Complex64> {
    ThetaEvaluator::new(*m, 1)?.theta1(z)
}

/// `θ_j(z)` for the order of `e`.
pub fn theta_basis(e: &ThetaEvaluator, j: i64, z: Complex64) -> Result<Complex64> {
    e.basis(j, z)
}

fn pole_checked(e: &ThetaEvaluator, d: Complex64) -> Result<Complex64> {
    let den = e.theta1(d)?;
    if den.norm() < POLE_TOL {
        return Err(Error::Pole(format!("θ(x − y) vanishes at x − y = {d}")));
    }
    Ok(den)
}

/// `λ(x, y) = θ(x − y − nτ) / θ(x − y)`.
///
/// ```
/// use elliptic_sklyanin::theta::{lambda_kernel, ModularParam, ThetaEvaluator};
/// use num_complex::Complex64;
/// let e = ThetaEvaluator::new(ModularParam::square(), 1).unwrap();
/// let (x, y) = (Complex64::new(0.4, 0.1), Complex64::new(0.1, 0.3));
/// let one = lambda_kernel(&e, 3, Complex64::new(0.0, 0.0), x, y).unwrap();
/// assert!((one - 1.0).norm() < 1e-12);
/// assert!(lambda_kernel(&e, 3, Complex64::new(0.1, 0.0), x, x).is_err());
/// ```
pub fn lambda_kernel(e: &ThetaEvaluator, n: i64, tau: Complex64, x: Complex64, y: Complex64) -> Result<Complex64> {
    let d = x - y;
    let den = pole_checked(e, d)?;
    Ok(e.theta1(d - tau * n as f64)? / den)
}

/// `θ(x − y + 2nτ) θ(x − y − nτ) / θ(x − y)²`.
pub fn tn_kernel(e: &ThetaEvaluator, n: i64, tau: Complex64, x: Complex64, y: Complex64) -> Result<Complex64> {
    let d = x - y;
    let den = pole_checked(e, d)?;
    let nf = n as f64;
    Ok(e.theta1(d + tau * (2.0 * nf))? * e.theta1(d - tau * nf)? / (den * den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn theta1_periods() {
        let e = ThetaEvaluator::new(ModularParam::square(), 1).unwrap();
        let z = c(0.23, -0.41);
        let t = e.theta1(z).unwrap();
        assert!((e.theta1(z + 1.0).unwrap() + t).norm() < 1e-12);
        let shifted = e.theta1(z + I).unwrap();
        assert!((shifted - e.theta1_omega_factor(z) * t).norm() < 1e-12 * shifted.norm());
    }

    #[test]
    fn derivative_is_one() {
        let e = ThetaEvaluator::new(ModularParam::with_omega(c(0.2, 0.9)).unwrap(), 1).unwrap();
        let h = 1e-5;
        let d = (e.theta1(c(h, 0.0)).unwrap() - e.theta1(c(-h, 0.0)).unwrap()) / (2.0 * h);
        assert!((d - 1.0).norm() < 1e-9);
    }

    #[test]
    fn far_arguments_are_reduced() {
        let e = ThetaEvaluator::new(ModularParam::square(), 4).unwrap();
        let z = c(0.1, 0.2);
        let mut v = e.basis(1, z).unwrap();
        let mut w = z;
        for _ in 0..5 {
            v *= e.basis_omega_factor(w);
            w += I;
        }
        let direct = e.basis(1, w).unwrap();
        assert!((direct - v).norm() < 1e-10 * direct.norm());
    }

    #[test]
    fn order_one_basis_is_theta1_times_exponential() {
        let e = ThetaEvaluator::new(ModularParam::square(), 1).unwrap();
        let r = |z: Complex64| e.basis(0, z).unwrap() / e.theta1(z).unwrap() / (PI * I * z).exp();
        let r0 = r(c(0.3, 0.1));
        assert!((r(c(0.7, -0.3)) - r0).norm() < 1e-12 * r0.norm());
    }

    #[test]
    fn rejects_bad_lattice() {
        assert!(ModularParam::with_omega(c(0.0, -1.0)).is_err());
        assert!(ModularParam::new(I, 0.0).is_err());
        assert!(ThetaEvaluator::new(ModularParam::square(), 0).is_err());
        let e = ThetaEvaluator::new(ModularParam::square(), 1).unwrap();
        assert!(e.theta1(c(0.0, 1e9)).is_err());
    }
}
