use std::collections::BTreeSet;

use num_integer::Integer;

use super::SlopeSeq;
use crate::error::{Error, Result};
use crate::exact::Slope;

/// All sequences `{p_1/q_1 ≤ ... ≤ p_l/q_l}` strictly below `{0, n/k}`,
/// found by solving the inequality system directly.
///
/// Conditions: each `p_i/q_i` reduced with `p_i > 0`; `p_l/q_l < n/k`;
/// `Σ p_i = n`, `Σ q_i = k + 1`; and for `j ≥ 2`,
/// `p_j + (p_1 + ... + p_{j-1}) q_j - p_j (q_1 + ... + q_{j-1}) > 0`.
/// The search is a depth-first walk over compositions of `n` and `k + 1`.
///
/// ```
/// use elliptic_sklyanin::strata::admissible_sequences;
/// let found: Vec<String> = admissible_sequences(9, 2).unwrap().iter().map(|s| s.to_string()).collect();
/// assert_eq!(found, ["{2, 7/2}", "{5/2, 4}", "{1, 4, 4}", "{2, 3, 4}", "{3, 3, 3}"]);
/// ```
pub fn admissible_sequences(n: u64, k: u64) -> Result<BTreeSet<SlopeSeq>> {
    if n == 0 || k == 0 {
        return Err(Error::Domain("admissible sequences need n, k > 0".into()));
    }
    if n.gcd(&k) != 1 {
        return Err(Error::Domain(format!("gcd({n}, {k}) != 1")));
    }
    let mut out = BTreeSet::new();
    let mut walk = Walk { n, k, prefix: Vec::new(), out: &mut out };
    walk.extend(0, 0);
    Ok(out)
}

struct Walk<'a> {
    n: u64,
    k: u64,
    prefix: Vec<(u64, u64)>,
    out: &'a mut BTreeSet<SlopeSeq>,
}

impl Walk<'_> {
    /// `sp`, `sq`: running sums of the chosen numerators and denominators.
    fn extend(&mut self, sp: u64, sq: u64) {
        let (n, k1) = (self.n, self.k + 1);
        if sp == n && sq == k1 {
            self.emit();
            return;
        }
        if sp >= n || sq >= k1 {
            return;
        }
        for q in 1..=(k1 - sq) {
            for p in 1..=(n - sp) {
                if p.gcd(&q) != 1 {
                    continue;
                }
                // p/q < n/k
                if (p as u128) * (self.k as u128) >= (n as u128) * (q as u128) {
                    continue;
                }
                if let Some(&(pp, qq)) = self.prefix.last() {
                    // nondecreasing: pp/qq <= p/q
                    if (pp as u128) * (q as u128) > (p as u128) * (qq as u128) {
                        continue;
                    }
                    let lhs = p as i128 + sp as i128 * q as i128 - p as i128 * sq as i128;
                    if lhs <= 0 {
                        continue;
                    }
                }
                self.prefix.push((p, q));
                self.extend(sp + p, sq + q);
                self.prefix.pop();
            }
        }
    }

    fn emit(&mut self) {
        let entries = self.prefix.iter().map(|&(p, q)| Slope::new(p, q).expect("q >= 1")).collect();
        self.out.insert(SlopeSeq::new(entries).expect("nonempty"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: u64, k: u64) -> Vec<String> {
        admissible_sequences(n, k).unwrap().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn nine_halves() {
        assert_eq!(labels(9, 2), ["{2, 7/2}", "{5/2, 4}", "{1, 4, 4}", "{2, 3, 4}", "{3, 3, 3}"]);
    }

    #[test]
    fn integer_slopes() {
        assert_eq!(labels(2, 1), ["{1, 1}"]);
        assert_eq!(labels(5, 1), ["{5/2}", "{1, 4}", "{2, 3}"]);
        assert_eq!(labels(6, 1), ["{1, 5}", "{2, 4}", "{3, 3}"]);
    }

    #[test]
    fn rejects_non_coprime() {
        assert!(admissible_sequences(6, 4).is_err());
        assert!(admissible_sequences(0, 1).is_err());
    }
}
