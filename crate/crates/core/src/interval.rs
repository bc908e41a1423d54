//! Dyadic intervals with directed rounding, used to certify signs of log-linear forms.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// The closed interval [lo, hi] * 2^-prec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub prec: u32,
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -(-a).div_floor(b)
}

fn shr_floor(a: &BigInt, k: u32) -> BigInt {
    // BigInt >> rounds toward negative infinity.
    a >> k as usize
}

fn shr_ceil(a: &BigInt, k: u32) -> BigInt {
    -((-a) >> k as usize)
}

impl Interval {
    pub fn zero(prec: u32) -> Self {
        Interval { lo: BigInt::zero(), hi: BigInt::zero(), prec }
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let scaled = q.numer() << prec as usize;
        Interval {
            lo: floor_div(&scaled, q.denom()),
            hi: ceil_div(&scaled, q.denom()),
            prec,
        }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        assert_eq!(self.prec, o.prec);
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi, prec: self.prec }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo, prec: self.prec }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        self.add(&o.neg())
    }

    /// Multiplication by an exact rational.
    pub fn scale(&self, q: &Rational) -> Interval {
        let (n, d) = (q.numer(), q.denom());
        let (a, b) = (&self.lo * n, &self.hi * n);
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        Interval { lo: floor_div(&a, d), hi: ceil_div(&b, d), prec: self.prec }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        assert_eq!(self.prec, o.prec);
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mn = c.iter().min().unwrap();
        let mx = c.iter().max().unwrap();
        Interval { lo: shr_floor(mn, self.prec), hi: shr_ceil(mx, self.prec), prec: self.prec }
    }

    /// Enclosure of sqrt(q) for q >= 0.
    pub fn sqrt_rational(q: &Rational, prec: u32) -> Interval {
        assert!(!q.is_negative());
        let scaled = (q.numer() << (2 * prec) as usize).div_floor(q.denom());
        let s = scaled.magnitude().sqrt();
        let exact = &s * &s == *scaled.magnitude() && (q.numer() << (2 * prec) as usize).is_multiple_of(q.denom());
        let lo = BigInt::from(s);
        let hi = if exact { lo.clone() } else { &lo + 1 };
        Interval { lo, hi, prec }
    }

    /// Some(sign) when the interval excludes zero or is the point zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.sign() == Sign::Plus {
            Some(Ordering::Greater)
        } else if self.hi.sign() == Sign::Minus {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn contains_integer(&self) -> bool {
        let a = ceil_div(&self.lo, &(BigInt::one() << self.prec as usize));
        a <= floor_div(&self.hi, &(BigInt::one() << self.prec as usize))
    }

    pub fn floor_lo(&self) -> BigInt {
        shr_floor(&self.lo, self.prec)
    }

    pub fn floor_hi(&self) -> BigInt {
        shr_floor(&self.hi, self.prec)
    }

    pub fn midpoint_f64(&self) -> f64 {
        let s: BigInt = &self.lo + &self.hi;
        let bits = s.bits() as i64;
        let shift = (bits - 60).max(0);
        let m = (&s >> shift as usize).to_string().parse::<f64>().unwrap_or(0.0);
        m * 2f64.powi((shift - self.prec as i64 - 1) as i32)
    }

    /// Decimal rendering of the midpoint with `digits` fractional digits.
    pub fn decimal(&self, digits: usize) -> String {
        let s: BigInt = &self.lo + &self.hi;
        let ten = BigInt::from(10u32).pow(digits as u32);
        let den = BigInt::one() << (self.prec + 1) as usize;
        let num: BigInt = &s * &ten * 2 + &den;
        let v = num.div_floor(&(&den * 2));
        let neg = v.is_negative();
        let a = v.abs();
        let (ip, fp) = a.div_rem(&ten);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{ip}")
        } else {
            format!("{sign}{ip}.{:0>width$}", fp.to_string(), width = digits)
        }
    }
}

/// 2*atanh(num/den) in fixed point with `w` fractional bits, as (lo, hi); requires num/den <= 1/3.
fn two_atanh(num: &BigUint, den: &BigUint, w: u32) -> (BigInt, BigInt) {
    if num.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let n = BigInt::from(num.clone());
    let d = BigInt::from(den.clone());
    let z_lo = floor_div(&(&n << w as usize), &d);
    let z_hi = ceil_div(&(&n << w as usize), &d);
    let z2_lo = shr_floor(&(&z_lo * &z_lo), w);
    let z2_hi = shr_ceil(&(&z_hi * &z_hi), w);
    let (mut p_lo, mut p_hi) = (z_lo, z_hi);
    let (mut s_lo, mut s_hi) = (BigInt::zero(), BigInt::zero());
    let mut k = 1u64;
    while p_hi > BigInt::one() {
        let kk = BigInt::from(k);
        s_lo += floor_div(&p_lo, &kk);
        s_hi += ceil_div(&p_hi, &kk);
        p_lo = shr_floor(&(&p_lo * &z2_lo), w);
        p_hi = shr_ceil(&(&p_hi * &z2_hi), w);
        k += 2;
    }
    // Remaining tail is at most p * 9/8 < 2 units.
    s_hi += 2;
    (s_lo << 1, s_hi << 1)
}

const GUARD: u32 = 24;

fn ln2_fixed(w: u32) -> (BigInt, BigInt) {
    static CACHE: OnceLock<Mutex<HashMap<u32, (BigInt, BigInt)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&w) {
        return v.clone();
    }
    let v = two_atanh(&BigUint::one(), &BigUint::from(3u32), w);
    cache.lock().unwrap().insert(w, v.clone());
    v
}

/// Enclosure of ln(n) for n >= 1.
pub fn ln_interval(n: &BigUint, prec: u32) -> Interval {
    assert!(!n.is_zero(), "ln of zero");
    if n.is_one() {
        return Interval::zero(prec);
    }
    let w = prec + GUARD;
    let k = n.bits() - 1;
    let pk = BigUint::one() << k as usize;
    let r = n - &pk;
    let s = n + &pk;
    let (a_lo, a_hi) = two_atanh(&r, &s, w);
    let (l_lo, l_hi) = ln2_fixed(w);
    let kk = BigInt::from(k);
    let lo = &kk * l_lo + a_lo;
    let hi = &kk * l_hi + a_hi;
    Interval { lo: shr_floor(&lo, GUARD), hi: shr_ceil(&hi, GUARD), prec }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_encloses_float() {
        for n in [2u64, 3, 5, 10, 1000, 65, 1 << 20, 123456789] {
            let iv = ln_interval(&BigUint::from(n), 64);
            let x = (n as f64).ln();
            assert!((iv.midpoint_f64() - x).abs() < 1e-12, "{n}");
            assert!(&iv.hi - &iv.lo < BigInt::from(16));
        }
    }

    #[test]
    fn ln_is_additive_within_width() {
        let a = ln_interval(&BigUint::from(6u32), 100);
        let b = ln_interval(&BigUint::from(2u32), 100).add(&ln_interval(&BigUint::from(3u32), 100));
        assert!(a.lo <= b.hi && b.lo <= a.hi);
    }

    #[test]
    fn sqrt_enclosure() {
        let q = Rational::new(1.into(), 4.into());
        let iv = Interval::sqrt_rational(&q, 10);
        assert_eq!(iv.lo, BigInt::from(512));
        assert_eq!(iv.hi, BigInt::from(512));
        let two = Rational::from_integer(2.into());
        let iv = Interval::sqrt_rational(&two, 30);
        assert!((iv.midpoint_f64() - 2f64.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn decimal_rendering() {
        let iv = Interval::from_rational(&Rational::new((-3).into(), 2.into()), 20);
        assert_eq!(iv.decimal(3), "-1.500");
        let iv = ln_interval(&BigUint::from(65u32), 128);
        assert_eq!(iv.decimal(6), "4.174387");
    }
}
