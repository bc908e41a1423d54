//! Absolute, local, projective and non-S heights; almost (S, delta)-unit predicates.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};
use crate::logreal::LogReal;
use crate::multipoly::MultiPoly;
use crate::places::{abs_at, joint_support, log_abs, Place, PlaceSet};
use crate::{Rational, DEFAULT_PREC};

/// A point of projective space, stored in canonical integer coordinates (coprime, first
/// nonzero coordinate positive).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

impl ProjPoint {
    pub fn new(coords: &[Rational]) -> Result<Self> {
        if coords.is_empty() || coords.iter().all(|c| c.is_zero()) {
            return domain("projective point with all coordinates zero");
        }
        let l = coords.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let mut v: Vec<BigInt> = coords.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let first_neg = v.iter().find(|c| !c.is_zero()).unwrap().is_negative();
        for c in v.iter_mut() {
            *c = &*c / &g;
            if first_neg {
                *c = -&*c;
            }
        }
        Ok(ProjPoint { coords: v })
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn rationals(&self) -> Vec<Rational> {
        self.coords.iter().map(|c| Rational::from_integer(c.clone())).collect()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

/// A point of the torus: every coordinate nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusPoint {
    coords: Vec<Rational>,
}

impl TorusPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return domain("empty torus point");
        }
        if coords.iter().any(|c| c.is_zero()) {
            return domain("torus point with a zero coordinate");
        }
        Ok(TorusPoint { coords })
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn inverse(&self) -> TorusPoint {
        TorusPoint { coords: self.coords.iter().map(|c| c.recip()).collect() }
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostUnitConfig {
    s: PlaceSet,
    delta: Rational,
}

impl AlmostUnitConfig {
    pub fn new(s: PlaceSet, delta: Rational) -> Result<Self> {
        if !s.contains_archimedean() {
            return domain("S must contain the archimedean place");
        }
        if delta.is_negative() || delta >= Rational::one() {
            return domain(format!("delta = {delta} outside [0, 1)"));
        }
        Ok(AlmostUnitConfig { s, delta })
    }

    pub fn s(&self) -> &PlaceSet {
        &self.s
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }
}

fn log_ratio(a: &BigUint, b: &BigUint) -> LogReal {
    &LogReal::log_uint(a) - &LogReal::log_uint(b)
}

/// h(x) = log max(|num|, den); h(0) = 0.
pub fn height(x: &Rational) -> LogReal {
    if x.is_zero() {
        return LogReal::zero();
    }
    LogReal::log_uint(x.numer().magnitude().max(x.denom().magnitude()))
}

/// lambda_v(x) = log max(1, |x|_v).
pub fn local_height(x: &Rational, v: Place) -> LogReal {
    if x.is_zero() || abs_at(x, v) <= Rational::one() {
        return LogReal::zero();
    }
    log_abs(x, v).expect("nonzero")
}

pub fn proj_height(p: &ProjPoint) -> LogReal {
    LogReal::log_uint(p.coords.iter().map(|c| c.magnitude()).max().unwrap())
}

/// log max_i |alpha_i|_v for the canonical representative.
pub fn proj_log_abs(p: &ProjPoint, v: Place) -> LogReal {
    let best = p
        .rationals()
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| abs_at(c, v))
        .max()
        .unwrap();
    LogReal::log_rational(&best).expect("nonzero")
}

/// log(|P|_v^d / |F(P)|_v) for a homogeneous F of degree d.
pub fn hypersurface_local_height(f: &MultiPoly, p: &ProjPoint, v: Place) -> Result<LogReal> {
    if !f.is_homogeneous() || f.is_zero() {
        return domain("hypersurface form must be a nonzero homogeneous polynomial");
    }
    if f.nvars() != p.len() {
        return domain("form and point live in different spaces");
    }
    let val = f.eval(&p.rationals())?;
    if val.is_zero() {
        return domain("point lies on the hypersurface");
    }
    let d = f.total_degree() as i64;
    Ok(&proj_log_abs(p, v).scale_int(d) - &log_abs(&val, v)?)
}

fn one_then(u: &TorusPoint) -> Vec<Rational> {
    let mut v = vec![Rational::one()];
    v.extend_from_slice(&u.coords);
    v
}

/// Height of the projective point (1 : u_1 : ... : u_n).
pub fn tuple_height(u: &TorusPoint) -> LogReal {
    proj_height(&ProjPoint::new(&one_then(u)).expect("first coordinate is 1"))
}

/// lambda_v(u) = log max(1, |u_1|_v, ..., |u_n|_v).
pub fn tuple_local_height(u: &TorusPoint, v: Place) -> LogReal {
    let best = u.coords.iter().map(|c| abs_at(c, v)).max().unwrap();
    if best <= Rational::one() {
        LogReal::zero()
    } else {
        LogReal::log_rational(&best).unwrap()
    }
}

/// Sum of the coordinate heights.
pub fn standard_height(u: &TorusPoint) -> LogReal {
    u.coords.iter().map(height).sum()
}

#[derive(Clone, Debug)]
pub struct TupleHeights {
    pub height: LogReal,
    pub standard: LogReal,
    /// Nonzero local heights, by place.
    pub local: Vec<(Place, LogReal)>,
}

pub fn tuple_heights(u: &TorusPoint) -> Result<TupleHeights> {
    let places = joint_support(&u.coords)?;
    let local = places
        .into_iter()
        .map(|v| (v, tuple_local_height(u, v)))
        .filter(|(_, h)| !h.is_zero())
        .collect();
    Ok(TupleHeights { height: tuple_height(u), standard: standard_height(u), local })
}

/// h_Sbar(x) = sum over v outside S of lambda_v(x) + lambda_v(1/x).
pub fn h_sbar(x: &Rational, s: &PlaceSet) -> Result<LogReal> {
    if x.is_zero() {
        return domain("h_Sbar of zero");
    }
    let (_, n) = s.split(x.numer().magnitude());
    let (_, d) = s.split(x.denom().magnitude());
    let mut out = &LogReal::log_uint(&n) + &LogReal::log_uint(&d);
    if !s.contains_archimedean() {
        let (a, b) = (x.numer().magnitude(), x.denom().magnitude());
        out += &log_ratio(a.max(b), a.min(b));
    }
    Ok(out)
}

/// Tuple version with the projective convention: lambda_v of u and of 1/u, coordinatewise maxima.
pub fn h_sbar_tuple(u: &TorusPoint, s: &PlaceSet) -> Result<LogReal> {
    let nums = u.coords.iter().fold(BigUint::one(), |l, c| l.lcm(c.numer().magnitude()));
    let dens = u.coords.iter().fold(BigUint::one(), |l, c| l.lcm(c.denom().magnitude()));
    let (_, n) = s.split(&nums);
    let (_, d) = s.split(&dens);
    let mut out = &LogReal::log_uint(&n) + &LogReal::log_uint(&d);
    if !s.contains_archimedean() {
        out += &tuple_local_height(u, Place::Archimedean);
        out += &tuple_local_height(&u.inverse(), Place::Archimedean);
    }
    Ok(out)
}

/// Sum of the coordinate h_Sbar values (standard-height convention).
pub fn h_sbar_standard(u: &TorusPoint, s: &PlaceSet) -> Result<LogReal> {
    u.coords.iter().map(|c| h_sbar(c, s)).sum()
}

fn at_most(lhs: &LogReal, delta: &Rational, h: &LogReal) -> bool {
    (&h.scale(delta) - lhs).sign(DEFAULT_PREC) != Ordering::Less
}

/// h_Sbar(x) <= delta * h(x).
pub fn is_almost_unit(x: &Rational, cfg: &AlmostUnitConfig) -> Result<bool> {
    Ok(at_most(&h_sbar(x, &cfg.s)?, &cfg.delta, &height(x)))
}

/// Tuple predicate with the projective convention.
pub fn is_almost_unit_tuple(u: &TorusPoint, cfg: &AlmostUnitConfig) -> Result<bool> {
    Ok(at_most(&h_sbar_tuple(u, &cfg.s)?, &cfg.delta, &tuple_height(u)))
}

/// Tuple predicate with the standard-height convention.
pub fn is_almost_unit_standard(u: &TorusPoint, cfg: &AlmostUnitConfig) -> Result<bool> {
    Ok(at_most(&h_sbar_standard(u, &cfg.s)?, &cfg.delta, &standard_height(u)))
}

/// Quasi-S-integer test sum_{v in S} lambda_v(x) >= eps * h(x), with local heights lambda_v in
/// the S-sum.
pub fn is_quasi_s_integer(x: &Rational, s: &PlaceSet, eps: &Rational) -> Result<bool> {
    if x.is_zero() {
        return domain("quasi-S-integer test of zero");
    }
    let inside: LogReal = s.places().into_iter().map(|v| local_height(x, v)).sum();
    Ok((&inside - &height(x).scale(eps)).sign(DEFAULT_PREC) != Ordering::Less)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::places::{int, rat};

    fn l(p: u64) -> LogReal {
        LogReal::log_prime(p)
    }

    fn tp(v: &[Rational]) -> TorusPoint {
        TorusPoint::new(v.to_vec()).unwrap()
    }

    #[test]
    fn scalar_heights() {
        assert!(height(&int(1)).is_zero());
        assert_eq!(height(&rat(3, 2)), l(3));
        assert_eq!(height(&int(-5)), l(5));
        assert!(height(&int(0)).is_zero());
    }

    #[test]
    fn local_heights() {
        assert_eq!(local_height(&rat(3, 2), Place::Finite(2)), l(2));
        assert!(local_height(&rat(3, 2), Place::Finite(3)).is_zero());
        assert_eq!(local_height(&rat(3, 2), Place::Archimedean), &l(3) - &l(2));
    }

    #[test]
    fn projective_heights() {
        let p = |v: &[Rational]| proj_height(&ProjPoint::new(v).unwrap());
        assert!(p(&[int(1), int(1)]).is_zero());
        assert_eq!(p(&[int(2), int(3)]), l(3));
        assert_eq!(p(&[int(1), rat(3, 2)]), l(3));
        assert!(ProjPoint::new(&[int(0), int(0)]).is_err());
        let q = ProjPoint::new(&[rat(-1, 2), int(3), int(0)]).unwrap();
        assert_eq!(q.coords(), &[BigInt::from(1), BigInt::from(-6), BigInt::from(0)]);
    }

    #[test]
    fn tuple_height_examples() {
        assert_eq!(tuple_heights(&tp(&[int(2), int(3)])).unwrap().height, l(3));
        assert!(tuple_heights(&tp(&[int(1), int(1)])).unwrap().height.is_zero());
        let t = tuple_heights(&tp(&[rat(1, 2), rat(1, 3)])).unwrap();
        assert_eq!(t.height, &l(2) + &l(3));
        assert_eq!(t.local, vec![(Place::Finite(2), l(2)), (Place::Finite(3), l(3))]);
        assert!(TorusPoint::new(vec![int(0)]).is_err());
    }

    #[test]
    fn non_s_heights() {
        let s2 = PlaceSet::with_infinity([2]).unwrap();
        let sinf = PlaceSet::with_infinity([]).unwrap();
        assert!(h_sbar(&int(8), &s2).unwrap().is_zero());
        assert_eq!(h_sbar(&int(3072), &s2).unwrap(), l(3));
        assert_eq!(h_sbar(&int(6), &sinf).unwrap(), &l(2) + &l(3));
        assert!(h_sbar(&int(0), &s2).is_err());
    }

    #[test]
    fn almost_unit_examples() {
        let c = AlmostUnitConfig::new(PlaceSet::with_infinity([2]).unwrap(), rat(1, 5)).unwrap();
        assert!(is_almost_unit(&int(3072), &c).unwrap());
        let c2 = AlmostUnitConfig::new(PlaceSet::with_infinity([]).unwrap(), rat(1, 10)).unwrap();
        assert!(!is_almost_unit(&int(6), &c2).unwrap());
        let c0 = AlmostUnitConfig::new(PlaceSet::with_infinity([2, 3]).unwrap(), int(0)).unwrap();
        assert!(is_almost_unit(&rat(-9, 16), &c0).unwrap());
        assert!(AlmostUnitConfig::new(PlaceSet::empty(), int(0)).is_err());
        assert!(AlmostUnitConfig::new(PlaceSet::with_infinity([]).unwrap(), int(1)).is_err());
    }

    #[test]
    fn hypersurface_examples() {
        let pt = |v: &[i64]| ProjPoint::new(&v.iter().map(|&x| int(x)).collect::<Vec<_>>()).unwrap();
        let x0 = MultiPoly::var(2, 0);
        let sum = &x0 + &MultiPoly::var(2, 1);
        assert!(hypersurface_local_height(&x0, &pt(&[1, 1]), Place::Archimedean).unwrap().is_zero());
        assert_eq!(hypersurface_local_height(&sum, &pt(&[1, 1]), Place::Archimedean).unwrap(), -&l(2));
        assert_eq!(hypersurface_local_height(&x0, &pt(&[2, 3]), Place::Finite(2)).unwrap(), l(2));
        assert!(hypersurface_local_height(&sum, &pt(&[1, -1]), Place::Archimedean).is_err());
    }

    #[test]
    fn quasi_integer_predicate() {
        let s = PlaceSet::with_infinity([]).unwrap();
        assert!(is_quasi_s_integer(&int(7), &s, &rat(1, 2)).unwrap());
        assert!(!is_quasi_s_integer(&rat(1, 7), &s, &rat(1, 2)).unwrap());
    }
}
