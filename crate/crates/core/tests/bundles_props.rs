use elliptic_sklyanin::bundles::{
    dual, ext_dim, fourier_mukai, hom_dim, t_action, w_space_dim, BundleSum, CurvePoint, IndecType,
};
use elliptic_sklyanin::exact::Slope;
use num_integer::Integer;
use proptest::prelude::*;

/// Types with |n| <= 10, k <= 5, parameter either the origin or a fixed generic point.
fn small_types() -> Vec<IndecType> {
    let generic = CurvePoint::from_ratios((7919, 104_729), (15_485_863, 32_452_843)).unwrap();
    let mut out = Vec::new();
    for n in -10..=10 {
        for k in 1..=5 {
            out.push(IndecType::trivial_param(n, k).unwrap());
            out.push(IndecType::new(n, k, generic.clone()).unwrap());
        }
    }
    out
}

#[test]
fn serre_symmetry_and_euler_form() {
    let types = small_types();
    let mut covered = 0;
    for a in &types {
        for b in &types {
            let Ok(h) = hom_dim(a, b) else {
                assert_eq!(a.slope(), b.slope());
                continue;
            };
            covered += 1;
            for i in 0..=1u8 {
                assert_eq!(ext_dim(i, a, b).unwrap(), ext_dim(1 - i, b, a).unwrap(), "{a} {b}");
            }
            let chi = b.degree() * a.rank() - a.degree() * b.rank();
            assert_eq!(h - ext_dim(1, a, b).unwrap(), chi, "{a} {b}");
            assert!(h >= 0);
        }
    }
    assert!(covered > 30_000);
}

#[test]
fn fourier_mukai_preserves_hom_and_ext() {
    let types: Vec<_> = small_types().into_iter().filter(|t| t.degree() > 0).collect();
    for a in &types {
        let fa = fourier_mukai(a).unwrap();
        assert_eq!(fa.rank(), a.degree());
        assert_eq!(fa.degree(), -a.rank());
        for b in &types {
            let fb = fourier_mukai(b).unwrap();
            let (Ok(h), Ok(fh)) = (hom_dim(a, b), hom_dim(&fa, &fb)) else {
                assert_eq!(a.slope(), b.slope());
                continue;
            };
            assert_eq!(h, fh, "Hom {a} {b}");
            assert_eq!(ext_dim(1, a, b).unwrap(), ext_dim(1, &fa, &fb).unwrap(), "Ext {a} {b}");
        }
    }
}

#[test]
fn swapped_positive_pairs_match() {
    // Hom(ξ_{n1,k1}, ξ_{n2,k2}) = Hom(ξ_{k2,n2}, ξ_{k1,n1}) for positive degrees.
    for n1 in 1..=10 {
        for k1 in 1..=5 {
            for n2 in 1..=10 {
                for k2 in 1..=5 {
                    let a = IndecType::trivial_param(n1, k1).unwrap();
                    let b = IndecType::trivial_param(n2, k2).unwrap();
                    let c = IndecType::trivial_param(k2, n2).unwrap();
                    let d = IndecType::trivial_param(k1, n1).unwrap();
                    match (hom_dim(&a, &b), hom_dim(&c, &d)) {
                        (Ok(x), Ok(y)) => assert_eq!(x, y),
                        (Err(_), Err(_)) => {}
                        other => panic!("coverage mismatch {other:?}"),
                    }
                }
            }
        }
    }
}

#[test]
fn w_space_matches_ext_for_coprime_pairs() {
    let mut count = 0;
    for n1 in 0..=12i64 {
        for k1 in 1..=6 {
            for n2 in 0..=12i64 {
                for k2 in 1..=6 {
                    if n1.gcd(&k1) != 1 || n2.gcd(&k2) != 1 {
                        continue;
                    }
                    let (t1, t2) = (Slope::new(n1, k1).unwrap(), Slope::new(n2, k2).unwrap());
                    if t1 >= t2 {
                        continue;
                    }
                    let a = IndecType::trivial_param(n1, k1).unwrap();
                    let b = IndecType::trivial_param(n2, k2).unwrap();
                    let w = w_space_dim(&t1, &t2).unwrap();
                    assert_eq!(w, ext_dim(1, &b, &a).unwrap().into());
                    count += 1;
                }
            }
        }
    }
    assert!(count > 50);
}

fn point() -> impl Strategy<Value = CurvePoint> {
    (any::<i32>(), 1i64..100_000, any::<i32>(), 1i64..100_000)
        .prop_map(|(a, b, c, d)| CurvePoint::from_ratios((a as i64, b), (c as i64, d)).unwrap())
}

fn indec() -> impl Strategy<Value = IndecType> {
    (-20i64..20, 1i64..8, point()).prop_map(|(n, k, p)| IndecType::new(n, k, p).unwrap())
}

proptest! {
    #[test]
    fn dual_is_an_involution(x in indec()) {
        prop_assert_eq!(dual(&dual(&x)), x);
    }

    #[test]
    fn self_ext_is_gcd(x in indec()) {
        prop_assert_eq!(ext_dim(0, &x, &x).unwrap(), x.gcd_class());
        prop_assert_eq!(ext_dim(1, &x, &x).unwrap(), x.gcd_class());
    }

    #[test]
    fn translation_action_is_additive(
        parts in proptest::collection::vec(indec(), 1..5),
        b1 in point(),
        b2 in point(),
    ) {
        let b = BundleSum::new(parts).unwrap();
        let lhs = t_action(&b1, &t_action(&b2, &b));
        let rhs = t_action(&(&b1 + &b2), &b);
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(t_action(&CurvePoint::origin(), &b), b.clone());
        prop_assert_eq!(lhs.total_degree(), b.total_degree());
        prop_assert_eq!(lhs.total_rank(), b.total_rank());
    }

    #[test]
    fn curve_group_laws(a in point(), b in point(), c in point()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a + &(-&a)).is_origin());
        prop_assert_eq!(&a + &CurvePoint::origin(), a.clone());
    }
}
