use std::cmp::Ordering;

use gcdlab_core::heights::{
    h_sbar, h_sbar_standard, h_sbar_tuple, height, hypersurface_local_height, is_almost_unit_tuple, local_height,
    standard_height, tuple_height, AlmostUnitConfig, ProjPoint, TorusPoint,
};
use gcdlab_core::multipoly::MultiPoly;
use gcdlab_core::places::rat;
use gcdlab_core::{log_abs, support, valuation, LogReal, Place, PlaceSet, Rational};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn nonzero_rat() -> impl Strategy<Value = Rational> {
    (-5000i64..5000, 1i64..5000).prop_filter_map("nonzero", |(n, d)| (n != 0).then(|| rat(n, d)))
}

fn s_unit() -> impl Strategy<Value = Rational> {
    (-6i32..=6, -6i32..=6, any::<bool>()).prop_map(|(a, b, neg)| {
        let x = rat(2, 1).pow(a) * rat(5, 1).pow(b);
        if neg {
            -x
        } else {
            x
        }
    })
}

fn place() -> impl Strategy<Value = Place> {
    prop_oneof![Just(Place::Archimedean), prop::sample::select(vec![2u64, 3, 5, 7, 11]).prop_map(|p| Place::finite(p).unwrap())]
}

proptest! {
    #[test]
    fn product_formula(x in nonzero_rat()) {
        let total: LogReal = support(&x).unwrap().into_iter().map(|v| log_abs(&x, v).unwrap()).sum();
        prop_assert!(total.is_zero());
    }

    #[test]
    fn multiplicativity(x in nonzero_rat(), y in nonzero_rat(), v in place()) {
        prop_assert_eq!(log_abs(&(&x * &y), v).unwrap(), log_abs(&x, v).unwrap() + log_abs(&y, v).unwrap());
    }

    #[test]
    fn ultrametric(x in nonzero_rat(), y in nonzero_rat(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let s = &x + &y;
        prop_assume!(!s.is_zero());
        let (a, b) = (valuation(&x, p).unwrap(), valuation(&y, p).unwrap());
        let c = valuation(&s, p).unwrap();
        prop_assert!(c >= a.min(b));
        if a != b {
            prop_assert_eq!(c, a.min(b));
        }
    }

    #[test]
    fn sign_is_additive(x in nonzero_rat(), y in nonzero_rat()) {
        let (a, b) = (LogReal::log_rational(&x.abs()).unwrap(), LogReal::log_rational(&y.abs()).unwrap());
        if a.sign(64) == Ordering::Greater && b.sign(64) == Ordering::Greater {
            prop_assert_eq!((&a + &b).sign(64), Ordering::Greater);
        }
        // float cross-check of the certified sign
        let f = a.to_f64();
        if f.abs() > 1e-9 {
            prop_assert_eq!(a.sign(64), f.partial_cmp(&0.0).unwrap());
        }
    }

    #[test]
    fn local_global(x in nonzero_rat()) {
        let sum: LogReal = support(&x).unwrap().into_iter().map(|v| local_height(&x, v)).sum();
        prop_assert_eq!(sum, height(&x));
    }

    #[test]
    fn height_of_powers(x in nonzero_rat(), k in -6i32..=6) {
        prop_assert_eq!(height(&x.pow(k)), height(&x).scale_int(k.abs() as i64));
    }

    #[test]
    fn h_sbar_bounds(x in nonzero_rat(), u in s_unit()) {
        let s = PlaceSet::with_infinity([2, 5]).unwrap();
        prop_assert_ne!(height(&x).scale_int(2).cmp_logreal(&h_sbar(&x, &s).unwrap(), 64), Ordering::Less);
        prop_assert!(h_sbar(&u, &s).unwrap().is_zero());
    }

    #[test]
    fn delta_zero_means_s_units(a in s_unit(), b in s_unit(), c in nonzero_rat()) {
        let s = PlaceSet::with_infinity([2, 5]).unwrap();
        let cfg = AlmostUnitConfig::new(s.clone(), Rational::zero()).unwrap();
        let units = TorusPoint::new(vec![a.clone(), b]).unwrap();
        prop_assert!(is_almost_unit_tuple(&units, &cfg).unwrap());
        let mixed = TorusPoint::new(vec![a, c.clone()]).unwrap();
        prop_assert_eq!(is_almost_unit_tuple(&mixed, &cfg).unwrap(), s.is_unit(&c));
    }

    #[test]
    fn projective_to_standard_chain(xs in prop::collection::vec(nonzero_rat(), 1..4)) {
        let s = PlaceSet::with_infinity([2, 3]).unwrap();
        let u = TorusPoint::new(xs.clone()).unwrap();
        let n = xs.len() as i64;
        let stand = h_sbar_standard(&u, &s).unwrap();
        let tuple = h_sbar_tuple(&u, &s).unwrap();
        prop_assert_ne!(stand.cmp_logreal(&tuple.scale_int(n), 64), Ordering::Greater);
        prop_assert_ne!(tuple_height(&u).cmp_logreal(&standard_height(&u), 64), Ordering::Greater);
    }

    #[test]
    fn hypersurface_scaling(a in nonzero_rat(), b in nonzero_rat(), c in nonzero_rat(), v in place()) {
        let f = MultiPoly::parse("x1^2 + 3*x1*x2 - 5*x2^2", 2).unwrap();
        let p = ProjPoint::new(&[a.clone(), b.clone()]).unwrap();
        prop_assume!(!f.eval(&p.rationals()).unwrap().is_zero());
        let q = ProjPoint::new(&[&a * &c, &b * &c]).unwrap();
        prop_assert_eq!(hypersurface_local_height(&f, &p, v).unwrap(), hypersurface_local_height(&f, &q, v).unwrap());
    }
}
