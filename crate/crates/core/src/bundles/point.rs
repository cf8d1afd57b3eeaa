use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::Slope;

/// A point of the curve in lattice coordinates, each taken modulo 1.
///
/// Torsion points are exact; generic points are modeled by rationals with
/// large denominators.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurvePoint {
    x: BigRational,
    y: BigRational,
}

fn reduce(r: BigRational) -> BigRational {
    let f = r.floor();
    r - f
}

impl CurvePoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        CurvePoint { x: reduce(x), y: reduce(y) }
    }

    pub fn from_ratios(x: (i64, i64), y: (i64, i64)) -> Result<Self> {
        let r = |(p, q): (i64, i64)| Slope::new(p, q).map(Slope::into_rational);
        Ok(Self::new(r(x)?, r(y)?))
    }

    pub fn origin() -> Self {
        CurvePoint { x: BigRational::zero(), y: BigRational::zero() }
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// `m · self` in the group law.
    pub fn scale(&self, m: &BigInt) -> Self {
        let m = BigRational::from_integer(m.clone());
        Self::new(&self.x * &m, &self.y * &m)
    }
}

impl Add for &CurvePoint {
    type Output = CurvePoint;

    fn add(self, o: &CurvePoint) -> CurvePoint {
        CurvePoint::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Sub for &CurvePoint {
    type Output = CurvePoint;

    fn sub(self, o: &CurvePoint) -> CurvePoint {
        CurvePoint::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl Neg for &CurvePoint {
    type Output = CurvePoint;

    fn neg(self) -> CurvePoint {
        CurvePoint::new(-self.x.clone(), -self.y.clone())
    }
}

fn show(r: &BigRational) -> String {
    Slope::from_rational(r.clone()).to_string()
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", show(&self.x), show(&self.y))
    }
}

impl fmt::Debug for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CurvePoint {
    type Err = Error;

    /// Parses `x,y` with rational coordinates, e.g. `1/3,0`.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s.split_once(',').ok_or_else(|| Error::Parse(format!("point must be x,y: {s:?}")))?;
        Ok(Self::new(a.parse::<Slope>()?.into_rational(), b.parse::<Slope>()?.into_rational()))
    }
}

impl Serialize for CurvePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&show(&self.x))?;
        t.serialize_element(&show(&self.y))?;
        t.end()
    }
}
