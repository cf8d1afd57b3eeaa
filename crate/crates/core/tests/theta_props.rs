use std::f64::consts::PI;

use elliptic_sklyanin::linalg::{normalize_rows, numerical_rank, CMat};
use elliptic_sklyanin::theta::{lambda_kernel, theta1, tn_kernel, ModularParam, ThetaEvaluator};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Plain truncated sums over a fixed window, no argument reduction.
fn oracle_theta1(z: Complex64, om: Complex64) -> Complex64 {
    let raw = |z: Complex64| -> Complex64 {
        let mut up = Complex64::new(0.0, 0.0);
        let mut down = Complex64::new(0.0, 0.0);
        for m in 0..40 {
            let h = m as f64 + 0.5;
            up += (I * PI * om * h * h + 2.0 * PI * I * h * (z + 0.5)).exp();
            let h = -h;
            down += (I * PI * om * h * h + 2.0 * PI * I * h * (z + 0.5)).exp();
        }
        up + down
    };
    let eps = 1e-6;
    let d = (raw(Complex64::new(eps, 0.0)) - raw(Complex64::new(-eps, 0.0))) / (2.0 * eps);
    raw(z) / d
}

fn oracle_basis(n: i64, a: i64, z: Complex64, om: Complex64) -> Complex64 {
    let d = if n % 2 == 0 { 0.5 / n as f64 } else { 0.0 };
    let mut s = Complex64::new(0.0, 0.0);
    for m in -40..=40 {
        let j = (a + n * m) as f64;
        let nf = n as f64;
        s += (I * PI * om * j * (j - nf) / nf + 2.0 * PI * I * j * (z + 0.5 + d)).exp();
    }
    s
}

fn random_point(rng: &mut ChaCha8Rng, om: Complex64) -> Complex64 {
    let (u, v): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    om * v + u
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

#[test]
fn theta1_matches_oracle_and_identities() {
    let m = ModularParam::square();
    let e = ThetaEvaluator::new(m, 1).unwrap();
    let om = m.omega();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    assert!(e.theta1(Complex64::new(0.0, 0.0)).unwrap().norm() < 1e-15);
    for _ in 0..100 {
        let z = random_point(&mut rng, om);
        let t = e.theta1(z).unwrap();
        assert!(rel(t, oracle_theta1(z, om)) < 1e-9, "oracle at {z}");
        assert!(rel(e.theta1(-z).unwrap(), -t) < 1e-10, "odd at {z}");
        assert!(rel(e.theta1(z + 1.0).unwrap(), -t) < 1e-10);
        assert!(rel(e.theta1(z + om).unwrap(), e.theta1_omega_factor(z) * t) < 1e-10);
        assert!(rel(theta1(z, &m).unwrap(), t) < 1e-14);
    }
}

#[test]
fn basis_matches_oracle_and_identities() {
    let m = ModularParam::square();
    let om = m.omega();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 1..=7usize {
        let e = ThetaEvaluator::new(m, n).unwrap();
        let ni = n as i64;
        assert!(e.basis(0, Complex64::new(0.0, 0.0)).unwrap().norm() < 1e-13, "θ_0(0) for n = {n}");
        for _ in 0..100 {
            let z = random_point(&mut rng, om);
            let values = e.basis_all(z).unwrap();
            assert!(values.iter().map(|v| v.norm()).fold(0.0, f64::max) > 1e-8);
            for a in 0..ni {
                let t = values[a as usize];
                assert!(rel(t, oracle_basis(ni, a, z, om)) < 1e-9, "n={n} a={a} z={z}");
                assert!(rel(e.basis(a, z + 1.0).unwrap(), t) < 1e-10);
                assert!(rel(e.basis(a, z + om).unwrap(), e.basis_omega_factor(z) * t) < 1e-10);
                let third = z + 1.0 / n as f64;
                assert!(rel(e.basis(a, third).unwrap(), e.basis_character(a) * t) < 1e-10);
                let up = e.basis(a + 1, z).unwrap();
                assert!(rel(e.basis(a, z + om / n as f64).unwrap(), e.basis_index_shift_factor(z) * up) < 1e-10);
            }
        }
    }
}

#[test]
fn basis_is_independent() {
    let m = ModularParam::with_omega(Complex64::new(0.1, 1.3)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in 1..=7usize {
        let e = ThetaEvaluator::new(m, n).unwrap();
        let mut mat = CMat::zeros(n, n);
        for r in 0..n {
            let z = random_point(&mut rng, m.omega());
            for (c, v) in e.basis_all(z).unwrap().into_iter().enumerate() {
                mat[(r, c)] = v;
            }
        }
        normalize_rows(&mut mat);
        assert_eq!(numerical_rank(&mat, 1e-8), n);
    }
}

#[test]
fn truncation_is_self_consistent() {
    let coarse = ModularParam::new(Complex64::new(0.2, 0.7), 1e-8).unwrap();
    let fine = ModularParam::new(Complex64::new(0.2, 0.7), 0.5e-8).unwrap();
    let (ec, ef) = (ThetaEvaluator::new(coarse, 4).unwrap(), ThetaEvaluator::new(fine, 4).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..50 {
        let z = random_point(&mut rng, coarse.omega());
        let (a, b) = (ec.theta1(z).unwrap(), ef.theta1(z).unwrap());
        assert!((a - b).norm() <= 10.0 * 1e-8 * a.norm().max(1.0));
        for j in 0..4 {
            let (a, b) = (ec.basis(j, z).unwrap(), ef.basis(j, z).unwrap());
            assert!((a - b).norm() <= 10.0 * 1e-8 * a.norm().max(1.0));
        }
    }
}

#[test]
fn kernels() {
    let e = ThetaEvaluator::new(ModularParam::square(), 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let tau = Complex64::new(0.13, 0.07);
    for _ in 0..50 {
        let (x, y) = (random_point(&mut rng, I), random_point(&mut rng, I));
        let l = lambda_kernel(&e, 3, tau, x, y).unwrap() * lambda_kernel(&e, 3, tau, y, x).unwrap();
        let d = x - y;
        let direct =
            -e.theta1(d - 3.0 * tau).unwrap() * e.theta1(-d - 3.0 * tau).unwrap() / (e.theta1(d).unwrap().powi(2));
        // θ odd: θ(x − y) θ(y − x) = −θ(x − y)²
        assert!(rel(l, direct) < 1e-10);
        let k = tn_kernel(&e, 3, tau, x, y).unwrap();
        assert!(k.re.is_finite() && k.im.is_finite());
    }
}
