use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::theta::{lambda_kernel, tn_kernel, ThetaEvaluator};

/// A two-variable kernel `λ(x, y)`.
pub type Kernel = Arc<dyn Fn(Complex64, Complex64) -> Result<Complex64> + Send + Sync>;

type Eval = Arc<dyn Fn(&[Vec<Complex64>]) -> Result<Complex64> + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Alternating,
}

/// A function of several groups of variables, symmetric (or alternating)
/// within each group, known only through evaluation.
#[derive(Clone)]
pub struct SymFun {
    degrees: Vec<usize>,
    symmetry: Symmetry,
    eval: Eval,
}

impl fmt::Debug for SymFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymFun").field("degrees", &self.degrees).field("symmetry", &self.symmetry).finish()
    }
}

impl SymFun {
    pub fn new(
        degrees: Vec<usize>,
        symmetry: Symmetry,
        f: impl Fn(&[Vec<Complex64>]) -> Result<Complex64> + Send + Sync + 'static,
    ) -> Self {
        SymFun { degrees, symmetry, eval: Arc::new(f) }
    }

    /// One group of `degree` variables.
    pub fn single(
        degree: usize,
        symmetry: Symmetry,
        f: impl Fn(&[Complex64]) -> Result<Complex64> + Send + Sync + 'static,
    ) -> Self {
        Self::new(vec![degree], symmetry, move |g: &[Vec<Complex64>]| f(&g[0]))
    }

    /// The degree-0 element `c`, with `groups` empty variable groups.
    pub fn constant(c: Complex64, groups: usize, symmetry: Symmetry) -> Self {
        Self::new(vec![0; groups], symmetry, move |_| Ok(c))
    }

    /// A degree-one element `z ↦ Σ_a c_a θ_a(z)` of the order-`n` theta space.
    pub fn theta_linear(e: &ThetaEvaluator, coeffs: Vec<Complex64>, symmetry: Symmetry) -> Self {
        let e = e.clone();
        Self::single(1, symmetry, move |x| {
            let vals = e.basis_all(x[0])?;
            Ok(vals.iter().zip(&coeffs).map(|(v, c)| v * c).sum())
        })
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Total number of variables.
    pub fn degree(&self) -> usize {
        self.degrees.iter().sum()
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn eval_groups(&self, groups: &[Vec<Complex64>]) -> Result<Complex64> {
        if groups.len() != self.degrees.len() || groups.iter().zip(&self.degrees).any(|(g, &d)| g.len() != d) {
            return Err(Error::Domain(format!("expected variable groups of sizes {:?}", self.degrees)));
        }
        (self.eval)(groups)
    }

    /// Evaluation for a single group of variables.
    pub fn eval(&self, x: &[Complex64]) -> Result<Complex64> {
        self.eval_groups(&[x.to_vec()])
    }
}

/// Sign of the permutation listing `chosen` (sorted) first, then the rest.
fn shuffle_sign(chosen: &[usize]) -> f64 {
    let inversions: usize = chosen.iter().enumerate().map(|(i, &c)| c - i).sum();
    if inversions.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Generic one-group product `Σ_S sign · Π_{i∈S, j∉S} K(x_i, x_j) f(x_S) g(x_{S^c} + α·shift)`,
/// which is `(1/(α!β!)) Symm[...]` for (skew-)symmetric `f`, `g`.
fn kernel_product(f: &SymFun, g: &SymFun, kernel: Kernel, shift: Complex64, symmetry: Symmetry) -> Result<SymFun> {
    if f.degrees.len() != 1 || g.degrees.len() != 1 {
        return Err(Error::Domain("one-group product needs single-group factors".into()));
    }
    let (alpha, beta) = (f.degree(), g.degree());
    let (f, g) = (f.clone(), g.clone());
    Ok(SymFun::single(alpha + beta, symmetry, move |x| {
        let offset = shift * alpha as f64;
        let mut total = Complex64::new(0.0, 0.0);
        for chosen in (0..alpha + beta).combinations(alpha) {
            let rest: Vec<usize> = (0..alpha + beta).filter(|i| !chosen.contains(i)).collect();
            let mut w = Complex64::new(1.0, 0.0);
            for &i in &chosen {
                for &j in &rest {
                    w *= kernel(x[i], x[j])?;
                }
            }
            let xs: Vec<Complex64> = chosen.iter().map(|&i| x[i]).collect();
            let ys: Vec<Complex64> = rest.iter().map(|&j| x[j] + offset).collect();
            let sign = if symmetry == Symmetry::Alternating { shuffle_sign(&chosen) } else { 1.0 };
            total += w * f.eval(&xs)? * g.eval(&ys)? * sign;
        }
        Ok(total)
    }))
}

/// The product of `S_{λ,p}`: `(1/(α!β!)) Symm[Π λ(x_i, x_j) f(x_1..x_α) g(x_{α+1} − αp, …)]`.
/// With `p = 0` this is the product of `S_λ`.
///
/// ```
/// use elliptic_sklyanin::sklyanin::{shuffle_product, SymFun, Symmetry};
/// use num_complex::Complex64;
/// use std::sync::Arc;
/// let one = SymFun::constant(Complex64::new(1.0, 0.0), 1, Symmetry::Symmetric);
/// let g = SymFun::single(1, Symmetry::Symmetric, |x| Ok(x[0] * x[0]));
/// let lam = Arc::new(|x: Complex64, y: Complex64| Ok(x - y + 1.0));
/// let p = shuffle_product(&one, &g, lam, Complex64::new(0.3, 0.0)).unwrap();
/// let z = Complex64::new(0.2, 0.5);
/// assert!((p.eval(&[z]).unwrap() - z * z).norm() < 1e-15);
/// ```
pub fn shuffle_product(f: &SymFun, g: &SymFun, lam: Kernel, p: Complex64) -> Result<SymFun> {
    kernel_product(f, g, lam, -p, Symmetry::Symmetric)
}

/// `λ(x, y) = θ(x − y − nτ)/θ(x − y)` as a [`Kernel`].
pub fn sklyanin_kernel(e: &ThetaEvaluator, n: usize, tau: Complex64) -> Kernel {
    let e1 = ThetaEvaluator::new(*e.modular(), 1).expect("order one");
    Arc::new(move |x, y| lambda_kernel(&e1, n as i64, tau, x, y))
}

/// `θ(x − y + 2nτ)θ(x − y − nτ)/θ(x − y)²` as a [`Kernel`].
pub fn tn_product_kernel(e: &ThetaEvaluator, n: usize, tau: Complex64) -> Kernel {
    let e1 = ThetaEvaluator::new(*e.modular(), 1).expect("order one");
    Arc::new(move |x, y| tn_kernel(&e1, n as i64, tau, x, y))
}

/// The product of `T_n(E, τ)`: skew-symmetrized kernel product with `g` shifted by `+2ατ`.
pub fn tn_product(f: &SymFun, g: &SymFun, e: &ThetaEvaluator, n: usize, tau: Complex64) -> Result<SymFun> {
    if f.symmetry != Symmetry::Alternating || g.symmetry != Symmetry::Alternating {
        return Err(Error::Domain("T_n factors must be alternating".into()));
    }
    kernel_product(f, g, tn_product_kernel(e, n, tau), tau * 2.0, Symmetry::Alternating)
}

/// The multigraded product `Symm[Π λ_{i,j}(u_{α,i}, u'_{β,j}) f(u) g(u')]`, normalized by
/// `Π_i 1/(l_i! l'_i!)` so each group sums over subsets.
pub fn multigraded_shuffle(f: &SymFun, g: &SymFun, kernels: Vec<Vec<Kernel>>) -> Result<SymFun> {
    let h = f.degrees.len();
    if g.degrees.len() != h || kernels.len() != h || kernels.iter().any(|row| row.len() != h) {
        return Err(Error::Domain("grading components and kernel matrix sizes differ".into()));
    }
    let (fd, gd) = (f.degrees.clone(), g.degrees.clone());
    let degrees: Vec<usize> = fd.iter().zip(&gd).map(|(a, b)| a + b).collect();
    let (f, g) = (f.clone(), g.clone());
    Ok(SymFun::new(degrees.clone(), Symmetry::Symmetric, move |groups| {
        let choices: Vec<Vec<Vec<usize>>> = (0..h).map(|i| (0..degrees[i]).combinations(fd[i]).collect()).collect();
        let mut total = Complex64::new(0.0, 0.0);
        for pick in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
            let mut left = Vec::with_capacity(h);
            let mut right = Vec::with_capacity(h);
            for (i, chosen) in pick.iter().enumerate() {
                left.push(chosen.iter().map(|&a| groups[i][a]).collect::<Vec<_>>());
                right.push((0..degrees[i]).filter(|a| !chosen.contains(a)).map(|a| groups[i][a]).collect::<Vec<_>>());
            }
            let mut w = Complex64::new(1.0, 0.0);
            for i in 0..h {
                for j in 0..h {
                    for &u in &left[i] {
                        for &v in &right[j] {
                            w *= kernels[i][j](u, v)?;
                        }
                    }
                }
            }
            total += w * f.eval_groups(&left)? * g.eval_groups(&right)?;
        }
        Ok(total)
    }))
}
