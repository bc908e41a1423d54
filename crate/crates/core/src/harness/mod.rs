//! Experiment drivers. Everything here is pure: reports come back as values and the CLI
//! decides how to write them.

mod examples;
mod poly;
mod rec1;
mod scan;
mod unit_eq;

pub use examples::{run_example_pk, run_sharpness, sharpness_window, PkReport, PkRow, SharpnessReport, SharpnessRow};
pub use poly::{run_poly_gcd_experiment, PolyGcdReport, PolyGcdRow, SampleConfig, Verdict};
pub use rec1::{run_rec1_scan, Rec1Report, Rec1Row};
pub use scan::{run_lrs_scan, tube_kappa, Cluster, ScanConfig, ScanMode, ScanReport, ScanRow, TubeSearch};
pub use unit_eq::{solve_unit_equation, UnitEqReport};

use std::cmp::Ordering;

use crate::logreal::LogReal;
use crate::{Rational, DEFAULT_PREC};

/// Serde adapter: rationals as strings like "3/5".
pub mod qstr {
    use crate::places::parse_rational;
    use crate::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }

    pub mod opt {
        use super::*;

        pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match q {
                Some(q) => s.serialize_some(&q.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}

/// Certified a > q.
fn exceeds(a: &LogReal, q: &Rational) -> bool {
    a.cmp_rational(q, DEFAULT_PREC) == Ordering::Greater
}

/// Minimal integer k >= 0 with r <= k * log(big), or None if big <= 1 and r > 0.
fn min_log_multiple(r: u64, big: u64) -> Option<u64> {
    if r == 0 {
        return Some(0);
    }
    if big <= 1 {
        return None;
    }
    let l = LogReal::log_uint(&big.into());
    let covers = |k: u64| k > 0 && l.cmp_rational(&Rational::new(r.into(), k.into()), DEFAULT_PREC) != Ordering::Less;
    let mut k = ((r as f64) / (big as f64).ln()).ceil().max(1.0) as u64;
    while k > 1 && covers(k - 1) {
        k -= 1;
    }
    while !covers(k) {
        k += 1;
    }
    Some(k)
}
