use clap::ValueEnum;
use elliptic_sklyanin::sklyanin::{
    associativity_residual, casimirs, center_space_even, central_element_odd, flatness, functional_relation_residual,
    generic_tau, heisenberg_check, poisson_from_family, polynomial_dim, relation_tensor, shuffle_product,
    sklyanin_kernel, t3_relation_residual, tn_product, two_component_instance, KernelChoice, SymFun, Symmetry,
};
use elliptic_sklyanin::theta::{ModularParam, ThetaEvaluator};
use elliptic_sklyanin::{Error, Result};
use num_complex::Complex64;
use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

/// The numerical checks exposed by `verify`.
#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Flatness,
    Heisenberg,
    Functional,
    Center,
    T3,
    Poisson,
    ShuffleAssoc,
    SerreZero,
}

/// Parameters of one `verify` run; unset options take per-check defaults.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: u64,
    pub omega: Complex64,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub h: Option<f64>,
    pub samples: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 0, omega: Complex64::new(0.0, 1.0), n: None, k: None, h: None, samples: None }
    }
}

/// One measured quantity against its threshold.
#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub case: String,
    pub check: String,
    pub value: Value,
    /// `<`, `>` or `==`, read as `value cmp threshold`.
    pub cmp: &'static str,
    pub threshold: Value,
    pub pass: bool,
}

/// Output of `verify`: every case, the overall verdict and check-specific data.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub check: Check,
    pub seed: u64,
    pub omega: [f64; 2],
    pub pass: bool,
    pub results: Vec<CaseResult>,
    pub data: Value,
}

struct Collector {
    results: Vec<CaseResult>,
}

impl Collector {
    fn below(&mut self, case: &str, check: &str, value: f64, threshold: f64) {
        self.push(case, check, json!(value), "<", json!(threshold), value < threshold);
    }

    fn above(&mut self, case: &str, check: &str, value: f64, threshold: f64) {
        self.push(case, check, json!(value), ">", json!(threshold), value > threshold);
    }

    fn equal<T: Serialize + PartialEq>(&mut self, case: &str, check: &str, value: T, expected: T) {
        let pass = value == expected;
        self.push(case, check, json!(value), "==", json!(expected), pass);
    }

    fn push(&mut self, case: &str, check: &str, value: Value, cmp: &'static str, threshold: Value, pass: bool) {
        self.results.push(CaseResult { case: case.into(), check: check.into(), value, cmp, threshold, pass });
    }
}

fn nk(cfg: &RunConfig, n: usize, k: usize) -> (usize, usize) {
    (cfg.n.unwrap_or(n), cfg.k.unwrap_or(k))
}

/// Runs one check with a RNG seeded from `cfg.seed`.
pub fn run_check(check: Check, cfg: &RunConfig) -> Result<Report> {
    if cfg.samples == Some(0) {
        return Err(Error::Domain("--samples must be positive".into()));
    }
    let m = ModularParam::with_omega(cfg.omega)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Collector { results: Vec::new() };
    let data = match check {
        Check::Flatness => {
            let (n, k) = nk(cfg, 3, 1);
            let top = if k == 1 && n <= 5 { 3 } else { 2 };
            let mut draws = Vec::new();
            for t in 0..cfg.samples.unwrap_or(1) {
                let f = flatness(n, k, &m, top, &mut rng)?;
                let case = format!("({n},{k}) draw {t}");
                out.equal(&case, "relation-rank", f.relation_rank, n * (n - 1) / 2);
                for (&l, &d) in &f.dims.dims {
                    out.equal(&case, &format!("dim-A{l}"), d, polynomial_dim(n, l as usize));
                }
                out.equal(&case, "two-tau-agreement", f.agree, true);
                draws.push(json!({ "taus": f.taus, "dims": f.dims.dims }));
            }
            json!({ "rank_threshold": format!("1e{}", elliptic_sklyanin::sklyanin::RANK_TOL.log10().round()), "draws": draws })
        }
        Check::Heisenberg => {
            let (n, k) = nk(cfg, 3, 1);
            let e = ThetaEvaluator::new(m, n)?;
            let mut taus = Vec::new();
            for t in 0..cfg.samples.unwrap_or(1) {
                let tau = generic_tau(&e, k, &mut rng)?;
                let r = relation_tensor(n, k, tau, &m)?;
                out.below(&format!("({n},{k}) draw {t}"), "invariance", heisenberg_check(&r), 1e-8);
                taus.push([tau.re, tau.im]);
            }
            json!({ "taus": taus })
        }
        Check::Functional => {
            let n = cfg.n.unwrap_or(3);
            if cfg.k.is_some_and(|k| k != 1) {
                return Err(Error::Domain("the functional realization is for k = 1".into()));
            }
            let e = ThetaEvaluator::new(m, n)?;
            let tau = generic_tau(&e, 1, &mut rng)?;
            let samples = cfg.samples.unwrap_or(20);
            let case = format!("n = {n}");
            let theta = functional_relation_residual(n, tau, &m, samples, KernelChoice::Theta, &mut rng)?;
            let trivial = functional_relation_residual(n, tau, &m, samples, KernelChoice::Trivial, &mut rng)?;
            out.below(&case, "relation-residual", theta, 1e-8);
            out.above(&case, "trivial-kernel-control", trivial, 1e-2);
            json!({ "tau": [tau.re, tau.im], "samples": samples })
        }
        Check::Center => {
            let n = cfg.n.unwrap_or(4);
            let e = ThetaEvaluator::new(m, n)?;
            let tau = generic_tau(&e, 1, &mut rng)?;
            let samples = cfg.samples.unwrap_or(2);
            let mut reports = Vec::new();
            if n.is_multiple_of(2) {
                let levels: &[(usize, usize)] = if n == 4 { &[(1, 2), (2, 3)] } else { &[(1, 2)] };
                for &(s, expected) in levels {
                    let rep = center_space_even(n, s, tau, &m, samples, &mut rng)?;
                    let case = format!("n = {n}, W{s}");
                    out.equal(&case, "span-is-flat", rep.generic_rank, rep.expected_span);
                    out.equal(&case, "dim", rep.dim, expected);
                    out.below(&case, "commutator", rep.commutator.unwrap_or(f64::INFINITY), 1e-7);
                    reports.push(rep);
                }
            } else {
                let rep = central_element_odd(n, tau, &m, samples, &mut rng)?;
                let case = format!("n = {n}, odd");
                out.equal(&case, "span-is-flat", rep.generic_rank, rep.expected_span);
                out.equal(&case, "dim", rep.dim, 1);
                out.below(&case, "commutator", rep.commutator.unwrap_or(f64::INFINITY), 1e-7);
                reports.push(rep);
            }
            json!({ "tau": [tau.re, tau.im], "reports": reports })
        }
        Check::T3 => {
            let e = ThetaEvaluator::new(m, 3)?;
            let samples = cfg.samples.unwrap_or(20);
            let mut attempt = 0;
            let (tau, rep) = loop {
                let tau = generic_tau(&e, 1, &mut rng)?;
                match t3_relation_residual(tau, &m, samples, &mut rng) {
                    Err(Error::NonGeneric(_)) if attempt < 20 => attempt += 1,
                    other => break (tau, other?),
                }
            };
            out.below("T3", "cubic-residual", rep.cubic_residual, 1e-7);
            out.below("T3", "quadratic-angle-vs-Q3(4tau)", rep.quadratic_angle, 1e-6);
            out.below("T3", "relations-in-degree-3-kernel", rep.kernel_angle, 1e-6);
            json!({ "tau": [tau.re, tau.im], "report": rep })
        }
        Check::Poisson => {
            let (n, k) = nk(cfg, 4, 1);
            let h = cfg.h.unwrap_or(1e-4);
            let fine = poisson_from_family(n, k, &m, h)?;
            let coarse = poisson_from_family(n, k, &m, 10.0 * h)?;
            let case = format!("({n},{k})");
            let mut asym: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    for ab in 0..n * n {
                        asym = asym.max((fine.c[i][j][ab] + fine.c[j][i][ab]).norm());
                    }
                }
            }
            out.equal(&case, "antisymmetry-defect", asym, 0.0);
            let (jf, jc) = (fine.jacobi_residual(), coarse.jacobi_residual());
            // a bracket already Jacobi to roundoff has nothing left to decrease
            let floor = 1e-10;
            let decreases = jf < jc || jf.max(jc) < floor;
            out.push(&case, "jacobi-decreases", json!([jc, jf]), "decreasing-or-below", json!(floor), decreases);
            let c = n.gcd(&(k + 1));
            let degree = n / c;
            let cas = casimirs(&fine, degree, 1e-6);
            out.equal(&case, &format!("casimirs-in-degree-{degree}"), cas.dim, c);
            out.below(&case, "casimir-residual", cas.residual, 1e-6);
            json!({ "h": h, "jacobi": { "coarse": jc, "fine": jf }, "casimirs": cas })
        }
        Check::ShuffleAssoc => {
            let n = cfg.n.unwrap_or(3);
            let e = ThetaEvaluator::new(m, n)?;
            let tau = generic_tau(&e, 1, &mut rng)?;
            let samples = cfg.samples.unwrap_or(20);
            let lam = sklyanin_kernel(&e, n, tau);
            let zero = Complex64::new(0.0, 0.0);
            let plain = |f: &SymFun, g: &SymFun| shuffle_product(f, g, lam.clone(), zero);
            let shifted = |f: &SymFun, g: &SymFun| shuffle_product(f, g, lam.clone(), tau * 2.0);
            let tn = |f: &SymFun, g: &SymFun| tn_product(f, g, &e, n, tau);
            let case = format!("n = {n}");
            out.below(
                &case,
                "S_lambda",
                associativity_residual(&e, &plain, Symmetry::Symmetric, samples, &mut rng)?,
                1e-8,
            );
            out.below(
                &case,
                "S_lambda,2tau",
                associativity_residual(&e, &shifted, Symmetry::Symmetric, samples, &mut rng)?,
                1e-8,
            );
            out.below(&case, "T_n", associativity_residual(&e, &tn, Symmetry::Alternating, samples, &mut rng)?, 1e-8);
            json!({ "tau": [tau.re, tau.im], "samples": samples })
        }
        Check::SerreZero => {
            let reports = two_component_instance(cfg.samples.unwrap_or(20), &mut rng)?;
            for rep in &reports {
                out.below(&rep.element, "on-chain", rep.on_chain, 1e-10);
                out.above(&rep.element, "off-chain-control", rep.off_chain, 1e-3);
            }
            json!({ "reports": reports })
        }
    };
    let pass = out.results.iter().all(|r| r.pass);
    Ok(Report { check, seed: cfg.seed, omega: [cfg.omega.re, cfg.omega.im], pass, results: out.results, data })
}
