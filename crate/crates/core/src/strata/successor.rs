use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::SlopeSeq;
use crate::error::{Error, Result};
use crate::exact::{eval_cfrac, normalizing_matrix, pair_determinant, to_cfrac, CFrac, Slope, UniMat};

/// The successor of `{0, τ}` for `τ > 1`.
///
/// With `τ = (n_1, ..., n_t)` this is `{1} ∪ {(n_1, ..., n_j - 1) : 1 ≤ j ≤ t}`,
/// sorted: `t + 1` entries of total degree `num(τ)` and rank `den(τ) + 1`.
///
/// ```
/// use elliptic_sklyanin::strata::char_seq_base;
/// use elliptic_sklyanin::exact::slope;
/// assert_eq!(char_seq_base(&slope(17, 2)).unwrap().to_string(), "{1, 8, 8}");
/// ```
pub fn char_seq_base(tau: &Slope) -> Result<SlopeSeq> {
    if tau <= &Slope::integer(1) {
        return Err(Error::Domain(format!("base successor needs τ > 1, got {tau}")));
    }
    let cf = to_cfrac(tau)?;
    let mut entries = vec![Slope::integer(1)];
    for j in 1..=cf.len() {
        entries.push(eval_cfrac(&cf.truncated(j)?)?);
    }
    SlopeSeq::new(entries)
}

fn pull_back(g_inv: &UniMat, s: &Slope) -> Result<Slope> {
    let (x, y) = g_inv.apply_vector(s.num(), s.den());
    if !y.is_positive() {
        return Err(Error::Numerical(format!("pull-back of {s} left the positive-rank cone")));
    }
    Slope::new(x, y)
}

/// The unique successor of the pair `{τ1, τ2}`, `τ1 < τ2`.
///
/// A unimodular pair (`p2 q1 - p1 q2 = 1`) glues to the mediant. Otherwise the
/// pair is moved to `{0, g(τ2)}` by [`normalizing_matrix`], the base rule is
/// applied, and the result is pulled back by `g⁻¹`.
///
/// ```
/// use elliptic_sklyanin::strata::char_seq_pair;
/// use elliptic_sklyanin::exact::slope;
/// assert_eq!(char_seq_pair(&slope(5, 2), &slope(4, 1)).unwrap().to_string(), "{3, 3, 3}");
/// assert_eq!(char_seq_pair(&slope(7, 1), &slope(8, 1)).unwrap().to_string(), "{15/2}");
/// ```
pub fn char_seq_pair(t1: &Slope, t2: &Slope) -> Result<SlopeSeq> {
    if t1 >= t2 {
        return Err(Error::Domain(format!("pair successor needs {t1} < {t2}")));
    }
    if pair_determinant(t1, t2).is_one() {
        let mediant = Slope::new(t1.num() + t2.num(), t1.den() + t2.den())?;
        return SlopeSeq::new(vec![mediant]);
    }
    let g = normalizing_matrix(t1, t2)?;
    let image =
        crate::exact::mobius(&g, t2).finite().ok_or_else(|| Error::Numerical("normalized τ2 is infinite".into()))?;
    let base = char_seq_base(&image)?;
    let g_inv = g.inverse();
    let entries = base.entries().iter().map(|s| pull_back(&g_inv, s)).collect::<Result<Vec<_>>>()?;
    SlopeSeq::new(entries)
}

/// The closed formula for the pair successor, without any matrix.
///
/// Write `τ1 = m_1 + 1/(m_2, ..., m_a)` with `m_1 = ⌊τ1⌋` and
/// `τ2 = (n_1, ..., n_b)`. The successor is
/// `{m_1 + 1/(m_2, ..., m_j - 1) : a ≥ j ≥ 2} ∪ {m_1 + 1} ∪ {(n_1, ..., n_j - 1) : 1 ≤ j ≤ b}`.
///
/// Returns `None` outside the formula's hypothesis, which is
/// `τ2 > ⌊τ1⌋ + 1`. At `τ2 = ⌊τ1⌋ + 1` the expansion of `τ2` has first term
/// `1` and the formula gives the wrong sequence.
pub fn char_seq_pair_explicit(t1: &Slope, t2: &Slope) -> Result<Option<SlopeSeq>> {
    if t1 >= t2 {
        return Err(Error::Domain(format!("pair successor needs {t1} < {t2}")));
    }
    let m1 = t1.floor();
    if t2 <= &Slope::integer(&m1 + BigInt::one()) || !t2.is_positive() {
        return Ok(None);
    }
    let m1r = BigRational::from_integer(m1.clone());
    let mut entries = Vec::new();
    if !t1.is_integer() {
        let frac = Slope::from_rational(t1.as_rational() - &m1r);
        let tail: CFrac = to_cfrac(&frac.recip()?)?;
        for j in 1..=tail.len() {
            let inner = eval_cfrac(&tail.truncated(j)?)?;
            entries.push(Slope::from_rational(&m1r + inner.recip()?.as_rational()));
        }
    }
    entries.push(Slope::integer(&m1 + BigInt::one()));
    let cf = to_cfrac(t2)?;
    for j in 1..=cf.len() {
        entries.push(eval_cfrac(&cf.truncated(j)?)?);
    }
    SlopeSeq::new(entries).map(Some)
}

/// One-step degenerations: glue each adjacent pair of distinct slopes.
///
/// Adjacent equal slopes never glue.
pub fn successors(r: &SlopeSeq) -> Result<BTreeSet<SlopeSeq>> {
    let e = r.entries();
    let mut out = BTreeSet::new();
    for i in 0..e.len().saturating_sub(1) {
        if e[i] < e[i + 1] {
            let glued = char_seq_pair(&e[i], &e[i + 1])?;
            out.insert(r.splice_pair(i, &glued));
        }
    }
    Ok(out)
}
