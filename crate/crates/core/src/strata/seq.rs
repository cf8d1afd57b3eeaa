use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::Slope;

/// A nondecreasing list of slopes labelling a rough stratum.
///
/// Sequences order by length first and then lexicographically, which is the
/// node order used by the exporters.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SlopeSeq {
    entries: Vec<Slope>,
}

impl SlopeSeq {
    /// Sorts the entries; fails on an empty list.
    pub fn new(mut entries: Vec<Slope>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Domain("empty slope sequence".into()));
        }
        entries.sort();
        Ok(SlopeSeq { entries })
    }

    /// The pair `{τ1, τ2}`.
    pub fn pair(t1: Slope, t2: Slope) -> Self {
        Self::new(vec![t1, t2]).expect("nonempty")
    }

    pub fn entries(&self) -> &[Slope] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of numerators.
    pub fn total_degree(&self) -> BigInt {
        self.entries.iter().map(|s| s.num().clone()).sum()
    }

    /// Sum of denominators.
    pub fn total_rank(&self) -> BigInt {
        self.entries.iter().map(|s| s.den().clone()).sum()
    }

    /// Replaces the entries at `i` and `i + 1` with `with` and re-sorts.
    pub(crate) fn splice_pair(&self, i: usize, with: &SlopeSeq) -> SlopeSeq {
        let mut entries = self.entries[..i].to_vec();
        entries.extend_from_slice(&with.entries);
        entries.extend_from_slice(&self.entries[i + 2..]);
        SlopeSeq::new(entries).expect("nonempty")
    }
}

impl PartialOrd for SlopeSeq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SlopeSeq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.entries.len().cmp(&other.entries.len()).then_with(|| self.entries.cmp(&other.entries))
    }
}

impl fmt::Display for SlopeSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for SlopeSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for SlopeSeq {
    type Err = Error;

    /// Parses comma-separated slopes, with or without surrounding braces.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let entries = body.split(',').map(str::parse).collect::<Result<Vec<Slope>>>()?;
        SlopeSeq::new(entries)
    }
}

impl Serialize for SlopeSeq {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::slope;

    #[test]
    fn sorts_and_totals() {
        let s = SlopeSeq::new(vec![Slope::integer(8), slope(15, 2), Slope::integer(2)]).unwrap();
        assert_eq!(s.to_string(), "{2, 15/2, 8}");
        assert_eq!(s.total_degree(), BigInt::from(25));
        assert_eq!(s.total_rank(), BigInt::from(4));
    }

    #[test]
    fn order_is_length_then_lex() {
        let a: SlopeSeq = "{17/3}".parse().unwrap();
        let b: SlopeSeq = "{2, 15/2}".parse().unwrap();
        let c: SlopeSeq = "{11/2, 6}".parse().unwrap();
        let d: SlopeSeq = "{1, 8, 8}".parse().unwrap();
        let mut v = vec![d.clone(), c.clone(), a.clone(), b.clone()];
        v.sort();
        assert_eq!(v, vec![a, b, c, d]);
    }

    #[test]
    fn parse_errors() {
        assert!("{}".parse::<SlopeSeq>().is_err());
        assert!("1,x".parse::<SlopeSeq>().is_err());
        assert_eq!("0,5/2".parse::<SlopeSeq>().unwrap().len(), 2);
    }
}
