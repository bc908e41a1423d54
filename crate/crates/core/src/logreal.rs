//! Exact reals of the form sum c_b * log(b) with rational c_b and pairwise coprime integer bases b > 1.
//!
//! Bases are primes whenever the factorization is cheap (everything below 2^64 and every
//! prime factor below 1000). Larger cofactors are kept as composite bases; addition refines
//! the union of bases to a common coprime base, so zero-testing stays exact: logs of
//! pairwise coprime integers > 1 are linearly independent over the rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{coprime_base, express_over_base, partial_factor};
use crate::error::{domain, Result};
use crate::interval::{ln_interval, Interval};
use crate::Rational;

#[derive(Clone, Debug, Default)]
pub struct LogReal {
    terms: BTreeMap<BigUint, Rational>,
}

impl LogReal {
    pub fn zero() -> Self {
        LogReal::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// log(n) for n >= 1.
    pub fn log_uint(n: &BigUint) -> Self {
        assert!(!n.is_zero(), "log of zero");
        let (parts, rest) = partial_factor(n);
        let mut terms = BTreeMap::new();
        for (p, e) in parts {
            terms.insert(p, Rational::from_integer(BigInt::from(e)));
        }
        if !rest.is_one() {
            // rest is coprime to every prime already extracted
            terms.insert(rest, Rational::one());
        }
        LogReal { terms }
    }

    pub fn log_prime(p: u64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(BigUint::from(p), Rational::one());
        LogReal { terms }
    }

    /// log|n| for a nonzero integer.
    pub fn log_int(n: &BigInt) -> Result<Self> {
        if n.is_zero() {
            return domain("log of zero");
        }
        Ok(Self::log_uint(n.magnitude()))
    }

    /// log|q| for a nonzero rational.
    pub fn log_rational(q: &Rational) -> Result<Self> {
        if q.is_zero() {
            return domain("log of zero");
        }
        Ok(&Self::log_uint(q.numer().magnitude()) - &Self::log_uint(q.denom().magnitude()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of log(p) when p is one of the stored bases.
    pub fn coeff(&self, base: &BigUint) -> Rational {
        self.terms.get(base).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LogReal::zero();
        }
        LogReal { terms: self.terms.iter().map(|(b, x)| (b.clone(), x * c)).collect() }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&Rational::from_integer(k.into()))
    }

    fn combine(&self, other: &LogReal, negate: bool) -> LogReal {
        let sgn = |c: &Rational| if negate { -c } else { c.clone() };
        let only_a: Vec<&BigUint> = self.terms.keys().filter(|k| !other.terms.contains_key(*k)).collect();
        let only_b: Vec<&BigUint> = other.terms.keys().filter(|k| !self.terms.contains_key(*k)).collect();
        let compatible = only_a.iter().all(|a| only_b.iter().all(|b| a.gcd(b).is_one()));
        let mut acc: BTreeMap<BigUint, Rational> = BTreeMap::new();
        if compatible {
            acc = self.terms.clone();
            for (b, c) in &other.terms {
                *acc.entry(b.clone()).or_insert_with(Rational::zero) += sgn(c);
            }
        } else {
            let keys: Vec<BigUint> = self.terms.keys().chain(other.terms.keys()).cloned().collect();
            let base = coprime_base(&keys);
            let mut push = |k: &BigUint, c: Rational| {
                let e = express_over_base(k, &base).expect("base refines every key");
                for (i, ei) in e.into_iter().enumerate() {
                    if ei > 0 {
                        *acc.entry(base[i].clone()).or_insert_with(Rational::zero) +=
                            &c * Rational::from_integer(BigInt::from(ei));
                    }
                }
            };
            for (k, c) in &self.terms {
                push(k, c.clone());
            }
            for (k, c) in &other.terms {
                push(k, sgn(c));
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LogReal { terms: acc }
    }

    /// Rigorous enclosure of the real value.
    pub fn enclose(&self, prec: u32) -> Interval {
        let mut acc = Interval::zero(prec);
        for (b, c) in &self.terms {
            acc = acc.add(&ln_interval(b, prec).scale(c));
        }
        acc
    }

    /// Cheap rational bounds from bit lengths; always valid.
    fn coarse_bounds(&self) -> (Rational, Rational) {
        let l2_lo = Rational::new(693147.into(), 1_000_000.into());
        let l2_hi = Rational::new(693148.into(), 1_000_000.into());
        let (mut lo, mut hi) = (Rational::zero(), Rational::zero());
        for (b, c) in &self.terms {
            let bits = Rational::from_integer(BigInt::from(b.bits()));
            let a = (&bits - Rational::one()) * &l2_lo * c;
            let z = &bits * &l2_hi * c;
            if c.is_positive() {
                lo += a;
                hi += z;
            } else {
                lo += z;
                hi += a;
            }
        }
        (lo, hi)
    }

    /// Exact sign, escalating interval precision from `prec` until the sign is certified.
    pub fn sign(&self, prec: u32) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        self.cmp_rational(&Rational::zero(), prec)
    }

    /// Exact comparison with a rational constant. Terminates: a nonzero linear form in
    /// logs of integers is transcendental, so it never equals a nonzero rational, and the
    /// zero form is caught exactly.
    pub fn cmp_rational(&self, q: &Rational, prec: u32) -> Ordering {
        if self.is_zero() {
            return Rational::zero().cmp(q);
        }
        let (lo, hi) = self.coarse_bounds();
        if hi < *q {
            return Ordering::Less;
        }
        if lo > *q {
            return Ordering::Greater;
        }
        let mut p = prec.max(32);
        loop {
            let iv = self.enclose(p).sub(&Interval::from_rational(q, p));
            if let Some(s) = iv.sign() {
                if s != Ordering::Equal {
                    return s;
                }
            }
            p *= 2;
        }
    }

    pub fn cmp_logreal(&self, other: &LogReal, prec: u32) -> Ordering {
        (self - other).sign(prec)
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose(64).midpoint_f64()
    }

    /// Decimal approximation with `digits` fractional digits, from a `prec`-bit enclosure.
    pub fn decimal(&self, digits: usize, prec: u32) -> String {
        let need = ((digits as f64) * 3.33) as u32 + 16;
        self.enclose(prec.max(need)).decimal(digits)
    }

    /// Number of stored bases.
    pub fn base_count(&self) -> usize {
        self.terms.len()
    }
}

impl PartialEq for LogReal {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl Eq for LogReal {}

impl Add for &LogReal {
    type Output = LogReal;
    fn add(self, o: &LogReal) -> LogReal {
        self.combine(o, false)
    }
}

impl Sub for &LogReal {
    type Output = LogReal;
    fn sub(self, o: &LogReal) -> LogReal {
        self.combine(o, true)
    }
}

impl Add for LogReal {
    type Output = LogReal;
    fn add(self, o: LogReal) -> LogReal {
        &self + &o
    }
}

impl Sub for LogReal {
    type Output = LogReal;
    fn sub(self, o: LogReal) -> LogReal {
        &self - &o
    }
}

impl AddAssign<&LogReal> for LogReal {
    fn add_assign(&mut self, o: &LogReal) {
        *self = &*self + o;
    }
}

impl Neg for &LogReal {
    type Output = LogReal;
    fn neg(self) -> LogReal {
        LogReal { terms: self.terms.iter().map(|(b, c)| (b.clone(), -c)).collect() }
    }
}

impl Neg for LogReal {
    type Output = LogReal;
    fn neg(self) -> LogReal {
        -&self
    }
}

impl std::iter::Sum for LogReal {
    fn sum<I: Iterator<Item = LogReal>>(iter: I) -> LogReal {
        iter.fold(LogReal::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if a.is_one() {
                write!(f, "log({b})")?;
            } else {
                write!(f, "{a}*log({b})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lg(n: u64) -> LogReal {
        LogReal::log_uint(&BigUint::from(n))
    }

    #[test]
    fn log_four_is_twice_log_two() {
        let d = &lg(2).scale_int(2) - &lg(4);
        assert!(d.is_zero());
        assert_eq!(d.sign(64), Ordering::Equal);
    }

    #[test]
    fn signs() {
        assert_eq!((&lg(3) - &lg(2)).sign(64), Ordering::Greater);
        assert_eq!((&lg(2) - &lg(3)).sign(64), Ordering::Less);
        // 2^10 = 1024 > 1000 = 10^3 by a hair
        assert_eq!((&lg(2).scale_int(10) - &lg(10).scale_int(3)).sign(8), Ordering::Greater);
    }

    #[test]
    fn composite_bases_refine() {
        // a prime-ish cofactor beyond u64: (2^89 - 1) is prime, times a 2^61 - 1 factor
        let p = (BigUint::one() << 89usize) - 1u32;
        let q = (BigUint::one() << 127usize) - 1u32;
        let n = &p * &q;
        let a = LogReal::log_uint(&n);
        let b = &LogReal::log_uint(&p) + &LogReal::log_uint(&q);
        assert_eq!(a, b);
        let c = &a - &LogReal::log_uint(&p);
        assert_eq!(c, LogReal::log_uint(&q));
    }

    #[test]
    fn display_is_sorted() {
        let x = &lg(3) - &lg(2);
        assert_eq!(x.to_string(), "-log(2) + log(3)");
        let y = lg(12).scale(&Rational::new(1.into(), 2.into()));
        assert_eq!(y.to_string(), "log(2) + 1/2*log(3)");
        assert_eq!(LogReal::zero().to_string(), "0");
    }

    #[test]
    fn compare_with_rational() {
        let l65 = lg(65);
        assert_eq!(l65.cmp_rational(&Rational::new(18.into(), 5.into()), 128), Ordering::Greater);
        assert_eq!(lg(2).cmp_rational(&Rational::new(7.into(), 10.into()), 128), Ordering::Less);
    }
}
