use std::cmp::Ordering;
use std::collections::BTreeSet;

use gcdlab_core::gengcd::{log_gcd, log_gcd_within};
use gcdlab_core::harness::{run_lrs_scan, ScanConfig, ScanMode, TubeSearch};
use gcdlab_core::heights::height;
use gcdlab_core::lrs::{CoeffPoly, PowerSum};
use gcdlab_core::places::{int, rat};
use gcdlab_core::{LogReal, PlaceSet, Rational};
use proptest::prelude::*;

fn power_sum() -> impl Strategy<Value = PowerSum> {
    let roots = vec![int(1), int(2), int(3), int(5), int(-2), rat(1, 2)];
    prop::collection::vec((prop::collection::vec(-2i64..=2, 1..3), prop::sample::select(roots)), 1..4)
        .prop_map(|t| {
            PowerSum::new(t.into_iter().map(|(c, r)| (CoeffPoly::new(c.into_iter().map(int).collect()), r)).collect())
                .unwrap()
        })
        .prop_filter("nonzero", |f| !f.is_zero())
}

fn config(f: PowerSum, g: PowerSum, eps: Rational, extra: Vec<u64>) -> ScanConfig {
    ScanConfig {
        f,
        g,
        epsilon: eps,
        n: 18,
        extra_s: PlaceSet::new(false, extra).unwrap(),
        mode: ScanMode::Full,
        tube: TubeSearch::default(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scan_invariants(
        f in power_sum(),
        g in power_sum(),
        extra in prop::collection::vec(prop::sample::select(vec![2u64, 3, 7]), 0..2),
        eps_num in 1i64..6,
    ) {
        let cfg = config(f.clone(), g.clone(), rat(eps_num, 10), extra);
        let rep = run_lrs_scan(&cfg).unwrap();
        prop_assert_eq!(rep.rows.len(), 18 * 18);
        for r in rep.rows.iter().filter(|r| !r.zero) {
            let (a, b) = (f.eval(r.m), g.eval(r.n));
            // partition: everything = outside + within
            let within = log_gcd_within(&a, &b, &rep.s).unwrap().into_inner();
            prop_assert_eq!(&r.lhs + &within, log_gcd(&a, &b).unwrap().into_inner());
            // bounded by the smaller height
            let (ha, hb) = (height(&a), height(&b));
            let hmin = if ha.cmp_logreal(&hb, 64) == Ordering::Less { ha } else { hb };
            prop_assert_ne!(r.lhs.cmp_logreal(&hmin, 64), Ordering::Greater);
        }
        for r in rep.flagged() {
            match r.cluster {
                Some(id) => {
                    let c = &rep.clusters[id];
                    let resid = (c.b as i64 * r.m as i64 - c.a as i64 * r.n as i64).unsigned_abs();
                    let reach = LogReal::log_uint(&r.m.max(r.n).into()).scale_int(c.kappa as i64);
                    prop_assert_ne!(reach.cmp_rational(&int(resid as i64), 64), Ordering::Less);
                }
                None => prop_assert!(rep.sporadic.contains(&(r.m, r.n))),
            }
        }
        // lowering epsilon can only add flags
        let lower = run_lrs_scan(&ScanConfig { epsilon: rat(eps_num, 20), ..cfg.clone() }).unwrap();
        let hi: BTreeSet<(u64, u64)> = rep.flagged().map(|r| (r.m, r.n)).collect();
        let lo: BTreeSet<(u64, u64)> = lower.flagged().map(|r| (r.m, r.n)).collect();
        prop_assert!(hi.is_subset(&lo));
        // determinism
        let again = run_lrs_scan(&cfg).unwrap();
        prop_assert_eq!(again.rows, rep.rows);
    }
}
