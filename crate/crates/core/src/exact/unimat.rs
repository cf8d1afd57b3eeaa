use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Slope;
use crate::error::{Error, Result};

/// An integer matrix `[[a, b], [c, d]]` with `ad - bc = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniMat {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

/// A point of the rational projective line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProjectivePoint {
    Finite(Slope),
    Infinity,
}

impl ProjectivePoint {
    pub fn finite(self) -> Option<Slope> {
        match self {
            ProjectivePoint::Finite(s) => Some(s),
            ProjectivePoint::Infinity => None,
        }
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectivePoint::Finite(s) => write!(f, "{s}"),
            ProjectivePoint::Infinity => write!(f, "inf"),
        }
    }
}

impl UniMat {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let m = UniMat { a: a.into(), b: b.into(), c: c.into(), d: d.into() };
        if m.det() != BigInt::one() {
            return Err(Error::Domain(format!("determinant of {m:?} is not 1")));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        UniMat { a: BigInt::one(), b: BigInt::zero(), c: BigInt::zero(), d: BigInt::one() }
    }

    /// `[[1, 0], [m, 1]]`, the stabilizer of zero.
    pub fn lower(m: BigInt) -> Self {
        UniMat { a: BigInt::one(), b: BigInt::zero(), c: m, d: BigInt::one() }
    }

    /// `[[1, m], [0, 1]]`, translation by `m`.
    pub fn translation(m: BigInt) -> Self {
        UniMat { a: BigInt::one(), b: m, c: BigInt::zero(), d: BigInt::one() }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn inverse(&self) -> Self {
        UniMat { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    /// Applies the matrix to the column vector `(x, y)`.
    pub fn apply_vector(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (&self.a * x + &self.b * y, &self.c * x + &self.d * y)
    }
}

impl fmt::Debug for UniMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl Mul for &UniMat {
    type Output = UniMat;

    fn mul(self, o: &UniMat) -> UniMat {
        UniMat {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }
}

/// Möbius action `s -> (a s + b)/(c s + d)`; a vanishing denominator gives `Infinity`.
///
/// ```
/// use elliptic_sklyanin::exact::{mobius, slope, UniMat, ProjectivePoint};
/// let g = UniMat::new(2, -5, 1, -2).unwrap();
/// assert_eq!(mobius(&g, &slope(5, 2)), ProjectivePoint::Finite(slope(0, 1)));
/// assert_eq!(mobius(&g, &slope(4, 1)), ProjectivePoint::Finite(slope(3, 2)));
/// assert_eq!(mobius(&g, &slope(2, 1)), ProjectivePoint::Infinity);
/// ```
pub fn mobius(g: &UniMat, s: &Slope) -> ProjectivePoint {
    let (x, y) = g.apply_vector(s.num(), s.den());
    if y.is_zero() {
        ProjectivePoint::Infinity
    } else {
        ProjectivePoint::Finite(Slope::new(x, y).expect("nonzero"))
    }
}

/// Möbius action on the whole projective line.
pub fn mobius_projective(g: &UniMat, p: &ProjectivePoint) -> ProjectivePoint {
    match p {
        ProjectivePoint::Finite(s) => mobius(g, s),
        ProjectivePoint::Infinity => {
            if g.c.is_zero() {
                ProjectivePoint::Infinity
            } else {
                ProjectivePoint::Finite(Slope::new(g.a.clone(), g.c.clone()).expect("nonzero"))
            }
        }
    }
}

/// `p2 q1 - p1 q2` for `τ1 = p1/q1`, `τ2 = p2/q2`: the determinant of the pair.
pub fn pair_determinant(t1: &Slope, t2: &Slope) -> BigInt {
    t2.num() * t1.den() - t1.num() * t2.den()
}

/// A matrix `g` with `g(τ1) = 0` and `g(τ2)` finite and `> 1`.
///
/// With `τ1 = p/q`, take `q r + p s = 1`, set `g0 = [[q, -p], [s, r]]`, and
/// left-multiply by the unique `[[1, 0], [m, 1]]` moving `g0(τ2) = u/v` into
/// `(1, ∞)`. Pairs with `p2 q1 - p1 q2 = 1` have `u = 1` and admit no such `g`;
/// they are reported as a domain error.
///
/// ```
/// use elliptic_sklyanin::exact::{normalizing_matrix, slope, UniMat};
/// let g = normalizing_matrix(&slope(5, 2), &slope(4, 1)).unwrap();
/// assert_eq!(g, UniMat::new(2, -5, 1, -2).unwrap());
/// ```
pub fn normalizing_matrix(t1: &Slope, t2: &Slope) -> Result<UniMat> {
    if t1 >= t2 {
        return Err(Error::Domain(format!("normalizing matrix needs {t1} < {t2}")));
    }
    let (p, q) = (t1.num(), t1.den());
    let eg = q.extended_gcd(p);
    // gcd(q, p) = 1 for a reduced slope; the sign is normalized here.
    let (r, s) = if eg.gcd.is_negative() { (-eg.x, -eg.y) } else { (eg.x, eg.y) };
    debug_assert!((q * &r + p * &s).is_one());
    let g0 = UniMat { a: q.clone(), b: -p.clone(), c: s, d: r };
    let (u, v) = g0.apply_vector(t2.num(), t2.den());
    debug_assert!(u.is_positive());
    if u.is_one() {
        return Err(Error::Domain(format!("pair {{{t1}, {t2}}} is unimodular; no g with g(τ2) > 1 exists")));
    }
    // v + m u must land in (0, u); v is coprime to u > 1, so the residue is nonzero.
    let target = v.mod_floor(&u);
    let m = (&target - &v) / &u;
    Ok(&UniMat::lower(m) * &g0)
}
