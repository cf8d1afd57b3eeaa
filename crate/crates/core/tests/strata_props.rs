use std::collections::BTreeSet;

use elliptic_sklyanin::exact::{mobius, ProjectivePoint, Slope, UniMat};
use elliptic_sklyanin::strata::{
    admissible_sequences, char_seq_pair, char_seq_pair_explicit, reachable_poset, SlopeSeq,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use proptest::prelude::*;

fn seq(s: &str) -> SlopeSeq {
    s.parse().unwrap()
}

fn coprime_pairs(limit: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for n in 1..=limit {
        for k in 1..n {
            if n.gcd(&k) == 1 {
                out.push((n, k));
            }
        }
    }
    out
}

#[test]
fn closure_equals_inequality_enumeration() {
    for (n, k) in coprime_pairs(12) {
        let root = SlopeSeq::pair(Slope::zero(), Slope::new(n, k).unwrap());
        let poset = reachable_poset(&root).unwrap();
        let closure: BTreeSet<SlopeSeq> = poset.nodes().filter(|s| *s != &root).cloned().collect();
        let solved = admissible_sequences(n as u64, k as u64).unwrap();
        assert_eq!(closure, solved, "n/k = {n}/{k}");
    }
}

#[test]
fn every_edge_conserves_degree_and_rank() {
    for (n, k) in coprime_pairs(12) {
        let root = SlopeSeq::pair(Slope::zero(), Slope::new(n, k).unwrap());
        let poset = reachable_poset(&root).unwrap();
        for (a, b) in poset.edges() {
            assert_eq!(a.total_degree(), b.total_degree(), "{a} -> {b}");
            assert_eq!(a.total_rank(), b.total_rank(), "{a} -> {b}");
            assert!(a.len() <= b.len() || b.len() < a.len());
        }
        for node in poset.nodes() {
            assert_eq!(node.total_degree(), BigInt::from(n));
            assert_eq!(node.total_rank(), BigInt::from(k + 1));
        }
        // a crude termination bound: the node set is finite and small
        assert!(poset.node_count() < 2000, "{n}/{k}: {}", poset.node_count());
    }
}

#[test]
fn two_paths_agree_where_formula_applies() {
    let mut slopes = Vec::new();
    for p in 0..=12i64 {
        for q in 1..=12i64 {
            if p.gcd(&q) == 1 {
                slopes.push(Slope::new(p, q).unwrap());
            }
        }
    }
    let mut applied = 0;
    for t1 in &slopes {
        for t2 in &slopes {
            if t1 >= t2 {
                continue;
            }
            if let Some(explicit) = char_seq_pair_explicit(t1, t2).unwrap() {
                assert_eq!(char_seq_pair(t1, t2).unwrap(), explicit, "{{{t1}, {t2}}}");
                applied += 1;
            }
        }
    }
    assert!(applied > 500, "only {applied} pairs exercised");
}

#[test]
fn chains_for_integer_slopes() {
    for big_n in 4..=9i64 {
        let poset = reachable_poset(&SlopeSeq::pair(Slope::zero(), big_n.into())).unwrap();
        let mut expected = vec![SlopeSeq::pair(Slope::zero(), big_n.into())];
        for m in 1..=big_n / 2 {
            expected.push(SlopeSeq::pair(m.into(), (big_n - m).into()));
        }
        if big_n % 2 == 1 {
            expected.push(SlopeSeq::new(vec![Slope::new(big_n, 2).unwrap()]).unwrap());
        }
        let nodes: Vec<_> = poset.nodes().cloned().collect();
        let mut sorted = expected.clone();
        sorted.sort();
        assert_eq!(nodes, sorted, "N = {big_n}");
        let edges: Vec<_> = poset.edges().map(|(a, b)| (a.clone(), b.clone())).collect();
        let chain: BTreeSet<_> = expected.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
        assert_eq!(edges.into_iter().collect::<BTreeSet<_>>(), chain, "N = {big_n}");
    }
}

#[test]
fn nine_halves_closure() {
    let poset = reachable_poset(&seq("0,9/2")).unwrap();
    let names: BTreeSet<String> = poset.nodes().map(ToString::to_string).collect();
    let expected: BTreeSet<String> = ["{0, 9/2}", "{1, 4, 4}", "{2, 3, 4}", "{3, 3, 3}", "{2, 7/2}", "{5/2, 4}"]
        .into_iter()
        .map(String::from)
        .collect();
    assert_eq!(names, expected);
}

/// Applies `g` to a slope viewed as the vector `(num, den)`; `None` unless the rank stays positive.
fn act(g: &UniMat, s: &Slope) -> Option<Slope> {
    let (x, y) = g.apply_vector(s.num(), s.den());
    if y.is_positive() {
        Slope::new(x, y).ok()
    } else {
        None
    }
}

fn small_sl2() -> Vec<UniMat> {
    let mut v = Vec::new();
    for a in -5i64..=5 {
        for b in -5i64..=5 {
            for c in -5i64..=5 {
                for d in -5i64..=5 {
                    if a * d - b * c == 1 {
                        v.push(UniMat::new(a, b, c, d).unwrap());
                    }
                }
            }
        }
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, max_global_rejects: 100_000, ..ProptestConfig::default() })]

    #[test]
    fn successor_is_sl2_equivariant(
        gi in 0usize..100_000,
        p1 in -12i64..=12, q1 in 1i64..=12,
        p2 in -12i64..=12, q2 in 1i64..=12,
    ) {
        let mats = small_sl2();
        let g = &mats[gi % mats.len()];
        let (t1, t2) = (Slope::new(p1, q1).unwrap(), Slope::new(p2, q2).unwrap());
        prop_assume!(t1 < t2);
        let (Some(g1), Some(g2)) = (act(g, &t1), act(g, &t2)) else {
            return Err(TestCaseError::reject("image leaves the positive-rank half plane"));
        };
        prop_assert!(g1 < g2);
        prop_assert!(matches!(mobius(g, &t1), ProjectivePoint::Finite(_)));
        let moved: Vec<Slope> = char_seq_pair(&t1, &t2)
            .unwrap()
            .entries()
            .iter()
            .map(|s| act(g, s).expect("cone maps into the half plane"))
            .collect();
        prop_assert_eq!(SlopeSeq::new(moved).unwrap(), char_seq_pair(&g1, &g2).unwrap());
    }
}
