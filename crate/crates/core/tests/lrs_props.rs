use std::cmp::Ordering;

use gcdlab_core::lrs::{empirical_c, multiplicative_independence, root_group, to_laurent, zero_scan, CoeffPoly, PowerSum};
use gcdlab_core::places::{int, rat};
use gcdlab_core::Rational;
use proptest::prelude::*;

fn root(positive: bool) -> impl Strategy<Value = Rational> {
    let pool = vec![rat(1, 1), rat(2, 1), rat(3, 1), rat(1, 2), rat(2, 3), rat(3, 2), rat(6, 1), rat(4, 1)];
    prop::sample::select(pool).prop_flat_map(move |r| {
        if positive {
            Just(r).boxed()
        } else {
            prop_oneof![Just(r.clone()), Just(-r)].boxed()
        }
    })
}

fn power_sum(positive: bool) -> impl Strategy<Value = PowerSum> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, 1..3), root(positive)), 1..4).prop_map(|terms| {
        PowerSum::new(
            terms.into_iter().map(|(c, r)| (CoeffPoly::new(c.into_iter().map(int).collect()), r)).collect(),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_homomorphism(f in power_sum(false), g in power_sum(false)) {
        let (fv, gv) = (f.eval_range(50), g.eval_range(50));
        let (s, p) = (f.add(&g).eval_range(50), f.mul(&g).eval_range(50));
        for n in 0..=50 {
            prop_assert_eq!(&s[n], &(&fv[n] + &gv[n]));
            prop_assert_eq!(&p[n], &(&fv[n] * &gv[n]));
        }
    }

    #[test]
    fn arithmetic_progressions(f in power_sum(false), a in 1u64..4, b in 0u64..4) {
        let h = f.compose_ap(a, b);
        let hv = h.eval_range(30);
        for t in 0..=30u64 {
            prop_assert_eq!(&hv[t as usize], &f.eval(a * t + b));
        }
    }

    #[test]
    fn laurent_identity(f in power_sum(true)) {
        let g = root_group(&f.roots()).unwrap();
        let l = to_laurent(&f, &g).unwrap();
        for n in 0..=20u64 {
            let mut pt = vec![Rational::from_integer(n.into())];
            pt.extend(g.generators.iter().map(|x| x.pow(n as i32)));
            prop_assert_eq!(l.eval(&pt).unwrap(), f.eval(n));
        }
    }

    #[test]
    fn nondegenerate_zeros_are_isolated(f in power_sum(false)) {
        prop_assume!(!f.is_zero() && !f.is_degenerate());
        let z = zero_scan(&f, 60);
        prop_assert!(z.progressions.is_empty());
        prop_assert_eq!(z.sporadic, z.zeros);
    }

    #[test]
    fn roots_reconstruct(rs in prop::collection::vec(root(false), 1..5)) {
        let g = root_group(&rs).unwrap();
        for (r, (s, e)) in rs.iter().zip(&g.expressions) {
            prop_assert_eq!(g.monomial(e) * int(*s as i64), r.clone());
        }
    }

    #[test]
    fn json_round_trip(f in power_sum(false)) {
        let s = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<PowerSum>(&s).unwrap(), f);
    }
}

#[test]
fn height_constant_positive_and_monotone() {
    for u in [vec![int(2), int(3)], vec![int(2), int(5)], vec![int(6), rat(1, 5)], vec![rat(3, 2), int(7)]] {
        let (a, b) = (u[..1].to_vec(), u[1..].to_vec());
        assert!(multiplicative_independence(&a, &b).unwrap());
        let mut prev = None;
        for bound in 1..=4 {
            let (c, _) = empirical_c(&u, bound).unwrap();
            assert_eq!(c.sign(64), Ordering::Greater);
            if let Some(p) = prev {
                assert_ne!(c.cmp_logreal(&p, 64), Ordering::Greater);
            }
            prev = Some(c);
        }
    }
}
