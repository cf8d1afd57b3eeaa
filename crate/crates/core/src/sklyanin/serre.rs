use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::symfun::{multigraded_shuffle, Kernel, SymFun, Symmetry};
use crate::error::Result;

/// Vanishing of an element on a claimed zero set, against nearby control points.
#[derive(Debug, Clone, Serialize)]
pub struct SerreReport {
    pub element: String,
    /// `max |f(on)| / scale`.
    pub on_chain: f64,
    /// `min |f(off)| / scale`.
    pub off_chain: f64,
    /// Mean `|f|` at unconstrained random points.
    pub scale: f64,
}

/// Evaluates `f` on each configuration in `on` and `off`, relative to its mean size on `generic`.
pub fn serre_zero_check(
    name: &str,
    f: &SymFun,
    on: &[Vec<Vec<Complex64>>],
    off: &[Vec<Vec<Complex64>>],
    generic: &[Vec<Vec<Complex64>>],
) -> Result<SerreReport> {
    let mut scale = 0.0;
    for g in generic {
        scale += f.eval_groups(g)?.norm();
    }
    scale /= generic.len().max(1) as f64;
    let mut on_max: f64 = 0.0;
    for g in on {
        on_max = on_max.max(f.eval_groups(g)?.norm());
    }
    let mut off_min = f64::INFINITY;
    for g in off {
        off_min = off_min.min(f.eval_groups(g)?.norm());
    }
    Ok(SerreReport { element: name.to_string(), on_chain: on_max / scale, off_chain: off_min / scale, scale })
}

fn poly_kernel(shift: f64) -> Kernel {
    Arc::new(move |u, v| Ok(u - v + shift))
}

/// The two-component polynomial instance: `λ_{11} = u − u' − 1`, `λ_{12} = u − u'`,
/// `λ_{21} = u − u' + 1`, `λ_{22} = u − u' + 3`; generators `X(u) = 1 + 0.3u + 0.1u²`
/// in component 1 and `Y(v) = 2 − v` in component 2.
///
/// The divisors `K_{11} = {u = u' + 1}`, `K_{12} = {u = u'}`, `K_{21} = {u = u' − 1}` close
/// up into the chain `u_1 = v + 1, u_2 = v`, on which every product of two `X` and one `Y`
/// must vanish. Returns a report per ordering `XXY`, `XYX`, `YXX`.
pub fn two_component_instance<R: Rng>(samples: usize, rng: &mut R) -> Result<Vec<SerreReport>> {
    let kernels = || vec![vec![poly_kernel(-1.0), poly_kernel(0.0)], vec![poly_kernel(1.0), poly_kernel(3.0)]];
    let x = SymFun::new(vec![1, 0], Symmetry::Symmetric, |g| {
        let u = g[0][0];
        Ok(1.0 + u * 0.3 + u * u * 0.1)
    });
    let y = SymFun::new(vec![0, 1], Symmetry::Symmetric, |g| Ok(2.0 - g[1][0]));
    let xx = multigraded_shuffle(&x, &x, kernels())?;
    let xy = multigraded_shuffle(&x, &y, kernels())?;
    let yx = multigraded_shuffle(&y, &x, kernels())?;
    let products = [
        ("XXY", multigraded_shuffle(&xx, &y, kernels())?),
        ("XYX", multigraded_shuffle(&xy, &x, kernels())?),
        ("YXX", multigraded_shuffle(&yx, &x, kernels())?),
    ];
    let point = |rng: &mut R| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let mut on = Vec::new();
    let mut off = Vec::new();
    let mut generic = Vec::new();
    for _ in 0..samples {
        let v = point(rng);
        on.push(vec![vec![v + 1.0, v], vec![v]]);
        let (d1, d2) = (point(rng) * 0.3, point(rng) * 0.3);
        off.push(vec![vec![v + 1.0 + d1, v + d2], vec![v]]);
        generic.push(vec![vec![point(rng), point(rng)], vec![point(rng)]]);
    }
    products.iter().map(|(name, f)| serre_zero_check(name, f, &on, &off, &generic)).collect()
}
