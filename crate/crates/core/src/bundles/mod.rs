//! Discrete invariants of bundles on an elliptic curve and their Hom/Ext calculus.
//!
//! An indecomposable bundle is recorded by its degree, rank and a curve-point
//! parameter. Dimensions follow the Atiyah rules: maps go up in slope, and an
//! indecomposable of type `(n, k)` has `gcd(n, k)` endomorphisms.

mod point;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

pub use point::CurvePoint;

use crate::error::{Error, Result};
use crate::exact::Slope;

/// The discrete type `ξ_{n,k}(α)` of an indecomposable bundle.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IndecType {
    degree: i64,
    rank: i64,
    param: CurvePoint,
}

impl IndecType {
    pub fn new(degree: i64, rank: i64, param: CurvePoint) -> Result<Self> {
        if rank < 1 {
            return Err(Error::ZeroRank);
        }
        Ok(IndecType { degree, rank, param })
    }

    /// Shorthand with the parameter at the origin.
    pub fn trivial_param(degree: i64, rank: i64) -> Result<Self> {
        Self::new(degree, rank, CurvePoint::origin())
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn param(&self) -> &CurvePoint {
        &self.param
    }

    pub fn slope(&self) -> Slope {
        Slope::new(self.degree, self.rank).expect("rank >= 1")
    }

    /// `gcd(|n|, k)`.
    pub fn gcd_class(&self) -> i64 {
        self.degree.gcd(&self.rank)
    }

    /// The coprime pair `(n/c, k/c)`.
    pub fn stable_core(&self) -> (i64, i64) {
        let c = self.gcd_class();
        (self.degree / c, self.rank / c)
    }

    pub fn with_param(&self, param: CurvePoint) -> Self {
        IndecType { param, ..self.clone() }
    }

    fn sort_key(&self) -> (Slope, i64, i64, &CurvePoint) {
        (self.slope(), self.degree, self.rank, &self.param)
    }
}

impl PartialOrd for IndecType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IndecType {
    /// Orders by slope, then degree, rank and parameter.
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for IndecType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ξ_{{{},{}}}{}", self.degree, self.rank, self.param)
    }
}

impl fmt::Debug for IndecType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A direct sum of indecomposables, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct BundleSum {
    components: Vec<IndecType>,
}

impl BundleSum {
    pub fn new(mut components: Vec<IndecType>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Domain("a bundle sum needs at least one component".into()));
        }
        components.sort();
        Ok(BundleSum { components })
    }

    pub fn components(&self) -> &[IndecType] {
        &self.components
    }

    pub fn total_degree(&self) -> i64 {
        self.components.iter().map(IndecType::degree).sum()
    }

    pub fn total_rank(&self) -> i64 {
        self.components.iter().map(IndecType::rank).sum()
    }
}

impl fmt::Display for BundleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl fmt::Debug for BundleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `ξ_{n,k}(α)^* = ξ_{-n,k}(-α)`.
pub fn dual(xi: &IndecType) -> IndecType {
    IndecType { degree: -xi.degree, rank: xi.rank, param: -&xi.param }
}

/// `dim Hom(ξ1, ξ2)`.
///
/// Defined for increasing slope (`n2 k1 - n1 k2`), decreasing slope (`0`) and
/// identical discrete type (`gcd(n, k)` for equal parameters, else `0`).
/// Equal slopes with different `(n, k)` are refused.
///
/// ```
/// use elliptic_sklyanin::bundles::{hom_dim, IndecType};
/// let o = IndecType::trivial_param(0, 1).unwrap();
/// let xi = IndecType::trivial_param(9, 2).unwrap();
/// assert_eq!(hom_dim(&o, &xi).unwrap(), 9);
/// assert_eq!(hom_dim(&xi, &o).unwrap(), 0);
/// ```
pub fn hom_dim(xi1: &IndecType, xi2: &IndecType) -> Result<i64> {
    match xi1.slope().cmp(&xi2.slope()) {
        Ordering::Less => Ok(xi2.degree * xi1.rank - xi1.degree * xi2.rank),
        Ordering::Greater => Ok(0),
        Ordering::Equal => {
            if (xi1.degree, xi1.rank) != (xi2.degree, xi2.rank) {
                return Err(Error::Unspecified(format!(
                    "Hom between equal-slope types {xi1} and {xi2} of different (n,k)"
                )));
            }
            Ok(if xi1.param == xi2.param { xi1.gcd_class() } else { 0 })
        }
    }
}

/// `dim Ext^i(ξ1, ξ2)` for `i ∈ {0, 1}`, with `Ext^1(ξ1, ξ2) = Hom(ξ2, ξ1)`.
pub fn ext_dim(i: u8, xi1: &IndecType, xi2: &IndecType) -> Result<i64> {
    match i {
        0 => hom_dim(xi1, xi2),
        1 => hom_dim(xi2, xi1),
        _ => Err(Error::Domain(format!("Ext^{i} vanishes identically on a curve; only i = 0, 1"))),
    }
}

/// `n2 k1 - k2 n1` for `τ1 < τ2`, the dimension of the extension space.
pub fn w_space_dim(t1: &Slope, t2: &Slope) -> Result<BigInt> {
    if t1 >= t2 {
        return Err(Error::Domain(format!("need {t1} < {t2}")));
    }
    Ok(crate::exact::pair_determinant(t1, t2))
}

/// `F(ξ_{n,k}(α)) = ξ_{-k,n}(-α)`, stated for `n > 0` only.
pub fn fourier_mukai(xi: &IndecType) -> Result<IndecType> {
    if xi.degree <= 0 {
        return Err(Error::Domain(format!("Fourier-Mukai is only given for positive degree, got {xi}")));
    }
    Ok(IndecType { degree: -xi.rank, rank: xi.degree, param: -&xi.param })
}

/// All components share one slope.
pub fn is_semistable(b: &BundleSum) -> bool {
    let s = b.components[0].slope();
    b.components.iter().all(|c| c.slope() == s)
}

/// Semistable, and every component has coprime `(n, k)`.
pub fn is_stable(b: &BundleSum) -> bool {
    is_semistable(b) && b.components.iter().all(|c| c.gcd_class() == 1)
}

/// Translates each parameter by `β · (n_i (k+1) - k_i n)` where `n` and `k+1`
/// are the total degree and rank of the sum.
pub fn t_action(beta: &CurvePoint, b: &BundleSum) -> BundleSum {
    let n = b.total_degree();
    let k1 = b.total_rank();
    let components = b
        .components
        .iter()
        .map(|c| {
            let m = BigInt::from(c.degree) * k1 - BigInt::from(c.rank) * n;
            c.with_param(&c.param + &beta.scale(&m))
        })
        .collect();
    BundleSum::new(components).expect("nonempty")
}
