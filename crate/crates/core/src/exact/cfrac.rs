use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::Slope;
use crate::error::{Error, Result};

/// A negative continued fraction `(n_1, ..., n_t)`, meaning
/// `n_1 - 1/(n_2 - 1/(... - 1/n_t))`.
///
/// Lists produced by [`to_cfrac`] have every term after the first `>= 2`.
/// Truncated tails such as `(n_1, ..., n_t - 1)` are allowed for evaluation,
/// so the last term may be `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CFrac {
    terms: Vec<BigInt>,
}

impl CFrac {
    pub fn new(terms: Vec<BigInt>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Domain("empty continued fraction".into()));
        }
        Ok(CFrac { terms })
    }

    pub fn from_i64s(terms: &[i64]) -> Result<Self> {
        Self::new(terms.iter().map(|&t| BigInt::from(t)).collect())
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The prefix `(n_1, ..., n_j - 1)`.
    pub fn truncated(&self, j: usize) -> Result<CFrac> {
        if j == 0 || j > self.terms.len() {
            return Err(Error::Domain(format!("truncation index {j} out of range")));
        }
        let mut terms = self.terms[..j].to_vec();
        *terms.last_mut().expect("nonempty") -= 1;
        Ok(CFrac { terms })
    }
}

/// Expands a positive slope into its negative continued fraction.
///
/// The first term is `ceil(s)`, so it equals `1` exactly when `s <= 1`.
/// All later terms are `>= 2`.
///
/// ```
/// use elliptic_sklyanin::exact::{slope, to_cfrac, eval_cfrac};
/// let c = to_cfrac(&slope(17, 2)).unwrap();
/// assert_eq!(c.terms(), &[9.into(), 2.into()]);
/// assert_eq!(eval_cfrac(&c).unwrap(), slope(17, 2));
/// ```
pub fn to_cfrac(s: &Slope) -> Result<CFrac> {
    if !s.is_positive() {
        return Err(Error::Domain(format!("continued fraction of nonpositive slope {s}")));
    }
    let mut terms = Vec::new();
    let mut x = s.clone();
    loop {
        let a = x.ceil();
        terms.push(a.clone());
        if x.is_integer() {
            break;
        }
        // a - x lies in (0, 1), so the next remainder exceeds 1.
        let rest = Slope::from_rational(num_rational::BigRational::from_integer(a) - x.as_rational());
        x = rest.recip()?;
    }
    Ok(CFrac { terms })
}

/// Evaluates `n_1 - 1/(n_2 - 1/(... - 1/n_t))` exactly.
///
/// ```
/// use elliptic_sklyanin::exact::{eval_cfrac, CFrac, slope};
/// assert_eq!(eval_cfrac(&CFrac::from_i64s(&[3, 1]).unwrap()).unwrap(), slope(2, 1));
/// assert!(eval_cfrac(&CFrac::from_i64s(&[2, 0]).unwrap()).is_err());
/// ```
pub fn eval_cfrac(c: &CFrac) -> Result<Slope> {
    let mut iter = c.terms.iter().rev();
    let last = iter.next().ok_or_else(|| Error::Domain("empty continued fraction".into()))?;
    let mut value = Slope::integer(last.clone());
    for term in iter {
        let inv = value.recip()?;
        value = Slope::from_rational(num_rational::BigRational::from_integer(term.clone()) - inv.as_rational());
    }
    Ok(value)
}

/// True when every term after the first is at least 2 (the form returned by [`to_cfrac`]).
pub fn is_reduced_tail(c: &CFrac) -> bool {
    let two = BigInt::one() + BigInt::one();
    c.terms.iter().skip(1).all(|t| t >= &two) && c.terms.iter().all(|t| t.is_positive())
}
