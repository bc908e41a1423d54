//! Places of Q, p-adic valuations and normalized absolute values.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factor_biguint, is_prime_u64, strip_factor};
use crate::error::{domain, Error, Result};
use crate::logreal::LogReal;
use crate::Rational;

/// Parses "a/b" or "a" (optional sign, no decimals).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Archimedean,
    Finite(u64),
}

impl Place {
    pub fn finite(p: u64) -> Result<Place> {
        if !is_prime_u64(p) {
            return domain(format!("{p} is not prime"));
        }
        Ok(Place::Finite(p))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Archimedean => write!(f, "inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;
    fn from_str(s: &str) -> Result<Place> {
        match s.trim() {
            "inf" | "oo" | "∞" => Ok(Place::Archimedean),
            t => {
                let p: u64 = t.parse().map_err(|_| Error::Parse(format!("not a place: {s:?}")))?;
                Place::finite(p)
            }
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Place, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite set of places. Theorem-level uses require the archimedean place; sets such as
/// S0 computed from recurrence roots may lack it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PlaceSet {
    archimedean: bool,
    primes: BTreeSet<u64>,
}

impl PlaceSet {
    pub fn new(archimedean: bool, primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let primes: BTreeSet<u64> = primes.into_iter().collect();
        if let Some(p) = primes.iter().find(|p| !is_prime_u64(**p)) {
            return domain(format!("{p} is not prime"));
        }
        Ok(PlaceSet { archimedean, primes })
    }

    /// {inf} together with the given primes.
    pub fn with_infinity(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        Self::new(true, primes)
    }

    pub fn empty() -> Self {
        PlaceSet::default()
    }

    pub fn contains_archimedean(&self) -> bool {
        self.archimedean
    }

    pub fn primes(&self) -> &BTreeSet<u64> {
        &self.primes
    }

    pub fn contains(&self, v: Place) -> bool {
        match v {
            Place::Archimedean => self.archimedean,
            Place::Finite(p) => self.primes.contains(&p),
        }
    }

    pub fn places(&self) -> Vec<Place> {
        let mut out = vec![];
        if self.archimedean {
            out.push(Place::Archimedean);
        }
        out.extend(self.primes.iter().map(|&p| Place::Finite(p)));
        out
    }

    pub fn union(&self, o: &PlaceSet) -> PlaceSet {
        PlaceSet {
            archimedean: self.archimedean || o.archimedean,
            primes: self.primes.union(&o.primes).copied().collect(),
        }
    }

    pub fn insert(&mut self, v: Place) {
        match v {
            Place::Archimedean => self.archimedean = true,
            Place::Finite(p) => {
                self.primes.insert(p);
            }
        }
    }

    /// Splits n > 0 as (S-part, non-S-part) over the finite primes of the set.
    pub fn split(&self, n: &BigUint) -> (BigUint, BigUint) {
        let mut rest = n.clone();
        let mut s_part = BigUint::one();
        for &p in &self.primes {
            let e = strip_factor(&mut rest, p);
            if e > 0 {
                s_part *= BigUint::from(p).pow(e);
            }
        }
        (s_part, rest)
    }

    /// True iff x is a nonzero rational supported on the finite primes of the set.
    pub fn is_unit(&self, x: &Rational) -> bool {
        !x.is_zero()
            && self.split(x.numer().magnitude()).1.is_one()
            && self.split(x.denom().magnitude()).1.is_one()
    }
}

impl fmt::Display for PlaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.places().iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromStr for PlaceSet {
    type Err = Error;
    /// Comma-separated places, e.g. "inf,2,3"; braces optional.
    fn from_str(s: &str) -> Result<PlaceSet> {
        let t = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut out = PlaceSet::empty();
        for part in t.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            out.insert(part.parse()?);
        }
        Ok(out)
    }
}

impl Serialize for PlaceSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.places().iter().map(|p| p.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlaceSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<PlaceSet, D::Error> {
        let v = Vec::<Place>::deserialize(d)?;
        let mut out = PlaceSet::empty();
        for p in v {
            out.insert(p);
        }
        Ok(out)
    }
}

/// v_p(x) for nonzero x.
pub fn valuation(x: &Rational, p: u64) -> Result<i64> {
    if x.is_zero() {
        return domain("valuation of zero");
    }
    if !is_prime_u64(p) {
        return domain(format!("{p} is not prime"));
    }
    let mut n = x.numer().magnitude().clone();
    let mut d = x.denom().magnitude().clone();
    Ok(strip_factor(&mut n, p) as i64 - strip_factor(&mut d, p) as i64)
}

/// |x|_v as an exact rational.
pub fn abs_at(x: &Rational, v: Place) -> Rational {
    match v {
        Place::Archimedean => x.abs(),
        Place::Finite(p) => {
            if x.is_zero() {
                return Rational::zero();
            }
            let e = valuation(x, p).expect("checked nonzero");
            let pp = BigInt::from(p).pow(e.unsigned_abs() as u32);
            if e >= 0 {
                Rational::new(BigInt::one(), pp)
            } else {
                Rational::from_integer(pp)
            }
        }
    }
}

/// log|x|_v.
pub fn log_abs(x: &Rational, v: Place) -> Result<LogReal> {
    if x.is_zero() {
        return domain("log_abs of zero");
    }
    match v {
        Place::Archimedean => LogReal::log_rational(x),
        Place::Finite(p) => Ok(LogReal::log_prime(p).scale_int(-valuation(x, p)?)),
    }
}

/// All places where |x|_v != 1.
pub fn support(x: &Rational) -> Result<BTreeSet<Place>> {
    if x.is_zero() {
        return domain("support of zero");
    }
    let mut out = BTreeSet::new();
    for part in [x.numer().magnitude(), x.denom().magnitude()] {
        let f = factor_biguint(part)
            .ok_or_else(|| Error::Domain("prime factor beyond the u64 range".into()))?;
        out.extend(f.into_iter().map(|(p, _)| Place::Finite(p)));
    }
    if !x.abs().is_one() {
        out.insert(Place::Archimedean);
    }
    Ok(out)
}

/// Union of supports of several nonzero rationals, always including the archimedean place.
pub fn joint_support(xs: &[Rational]) -> Result<BTreeSet<Place>> {
    let mut out = BTreeSet::from([Place::Archimedean]);
    for x in xs {
        out.extend(support(x)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(valuation(&int(12), 2).unwrap(), 2);
        assert_eq!(valuation(&rat(3, 8), 2).unwrap(), -3);
        assert_eq!(valuation(&int(7), 5).unwrap(), 0);
        assert!(valuation(&int(0), 5).is_err());
        assert!(valuation(&int(4), 4).is_err());
    }

    #[test]
    fn log_abs_values() {
        let l = |n| LogReal::log_prime(n);
        assert_eq!(log_abs(&int(6), Place::Finite(2)).unwrap(), -&l(2));
        assert_eq!(log_abs(&int(6), Place::Archimedean).unwrap(), &l(2) + &l(3));
        assert_eq!(log_abs(&rat(-3, 2), Place::Archimedean).unwrap(), &l(3) - &l(2));
    }

    #[test]
    fn supports() {
        let s = support(&int(6)).unwrap();
        assert_eq!(s, BTreeSet::from([Place::Archimedean, Place::Finite(2), Place::Finite(3)]));
        assert!(support(&int(1)).unwrap().is_empty());
        assert!(support(&int(-1)).unwrap().is_empty());
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert_eq!(rat(-3, 2).to_string(), "-3/2");
        let s: PlaceSet = "inf,3,2".parse().unwrap();
        assert_eq!(s.to_string(), "{inf,2,3}");
        assert!("inf,4".parse::<PlaceSet>().is_err());
    }
}
