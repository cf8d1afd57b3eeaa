use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational `num/den` in lowest terms with `den >= 1`.
///
/// The derived order is the order of rational numbers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slope(BigRational);

impl Slope {
    /// Normalizes `p/q`, failing when `q == 0`.
    ///
    /// ```
    /// use elliptic_sklyanin::exact::Slope;
    /// assert_eq!(Slope::new(6, 4).unwrap().to_string(), "3/2");
    /// assert_eq!(Slope::new(-4, -2).unwrap().to_string(), "2");
    /// assert!(Slope::new(1, 0).is_err());
    /// ```
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if q.is_zero() {
            return Err(Error::ZeroRank);
        }
        Ok(Slope(BigRational::new(p, q)))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Slope(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Slope(BigRational::zero())
    }

    pub fn from_rational(r: BigRational) -> Self {
        Slope(r)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_rational(self) -> BigRational {
        self.0
    }

    /// Degree numerator.
    pub fn num(&self) -> &BigInt {
        self.0.numer()
    }

    /// Rank denominator, always positive.
    pub fn den(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// `1/self`, failing at zero.
    pub fn recip(&self) -> Result<Self> {
        if self.0.is_zero() {
            return Err(Error::DegenerateTruncation);
        }
        Ok(Slope(self.0.recip()))
    }

    pub fn add_int(&self, m: &BigInt) -> Self {
        Slope(&self.0 + BigRational::from_integer(m.clone()))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Floating-point approximation, for display and numerics only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Slope {
    type Err = Error;

    /// Accepts `p/q` or a bare integer.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |t: &str| t.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("not a rational: {s:?}")));
        match s.split_once('/') {
            Some((p, q)) => Slope::new(parse(p)?, parse(q)?),
            None => Ok(Slope::integer(parse(s)?)),
        }
    }
}

impl From<i64> for Slope {
    fn from(n: i64) -> Self {
        Slope::integer(n)
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for `Slope::new(p, q).unwrap()` on small literals.
///
/// # Panics
///
/// Panics when `q == 0`.
pub fn slope(p: i64, q: i64) -> Slope {
    Slope::new(p, q).expect("nonzero denominator")
}
