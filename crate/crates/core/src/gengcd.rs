//! Generalized logarithmic gcd: -sum_v log^- max(|a|_v, |b|_v), in total and split by S.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};
use crate::logreal::LogReal;
use crate::places::{abs_at, Place, PlaceSet};
use crate::Rational;

/// A generalized log gcd; always nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdValue(LogReal);

impl GcdValue {
    pub fn value(&self) -> &LogReal {
        &self.0
    }

    pub fn into_inner(self) -> LogReal {
        self.0
    }
}

impl fmt::Display for GcdValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The two ingredients of log gcd(a, b): the finite part is log of the returned integer
/// (gcd of numerators, with gcd(0, n) = n); the archimedean part is log(1/max(|a|,|b|))
/// when that maximum is below 1.
pub fn gcd_parts(a: &Rational, b: &Rational) -> Result<(BigUint, Option<Rational>)> {
    if a.is_zero() && b.is_zero() {
        return domain("log gcd of (0, 0)");
    }
    let g = a.numer().magnitude().gcd(b.numer().magnitude());
    let m = a.abs().max(b.abs());
    let arch = (m < Rational::one()).then(|| m.recip());
    Ok((g, arch))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdSplit {
    pub outside: LogReal,
    pub within: LogReal,
}

pub fn log_gcd_split(a: &Rational, b: &Rational, s: &PlaceSet) -> Result<GcdSplit> {
    let (g, arch) = gcd_parts(a, b)?;
    let (gs, gr) = s.split(&g);
    let mut within = LogReal::log_uint(&gs);
    let mut outside = LogReal::log_uint(&gr);
    if let Some(q) = arch {
        let l = LogReal::log_rational(&q)?;
        if s.contains_archimedean() {
            within += &l;
        } else {
            outside += &l;
        }
    }
    Ok(GcdSplit { outside, within })
}

pub fn log_gcd(a: &Rational, b: &Rational) -> Result<GcdValue> {
    let s = log_gcd_split(a, b, &PlaceSet::empty())?;
    Ok(GcdValue(s.outside))
}

pub fn log_gcd_outside(a: &Rational, b: &Rational, s: &PlaceSet) -> Result<GcdValue> {
    Ok(GcdValue(log_gcd_split(a, b, s)?.outside))
}

pub fn log_gcd_within(a: &Rational, b: &Rational, s: &PlaceSet) -> Result<GcdValue> {
    Ok(GcdValue(log_gcd_split(a, b, s)?.within))
}

/// The single-place term -log^- max(|a|_v, |b|_v), straight from the definition.
pub fn log_gcd_at(a: &Rational, b: &Rational, v: Place) -> Result<LogReal> {
    if a.is_zero() && b.is_zero() {
        return domain("log gcd of (0, 0)");
    }
    let m = abs_at(a, v).max(abs_at(b, v));
    if m >= Rational::one() {
        return Ok(LogReal::zero());
    }
    LogReal::log_rational(&m.recip())
}
