use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{exceeds, min_log_multiple};
use crate::arith::is_prime_u64;
use crate::error::{Error, Result};
use crate::gengcd::log_gcd;
use crate::heights::{h_sbar_tuple, is_almost_unit_tuple, tuple_height, AlmostUnitConfig, TorusPoint};
use crate::logreal::LogReal;
use crate::lrs::PowerSum;
use crate::places::PlaceSet;
use crate::{Rational, DEFAULT_PREC};

#[derive(Clone, Debug)]
pub struct PkRow {
    pub k: u32,
    pub m: u64,
    pub n: u64,
    /// F(m) = G(n)
    pub equal: bool,
    pub lhs: LogReal,
    pub threshold: Rational,
    pub flagged: bool,
    /// n - m, the distance from the diagonal.
    pub offset: u64,
    /// Minimal kappa with offset <= kappa * log n.
    pub kappa: u64,
}

#[derive(Clone, Debug)]
pub struct PkReport {
    pub p: u64,
    pub epsilon: Rational,
    pub rows: Vec<PkRow>,
    /// Offsets strictly increase, so no shifted line m = n - c holds for more than one k.
    pub off_every_line: bool,
}

/// F(m) = m p^m + 1 and G(n) = p^n + 1 agree at (p^k, p^k + k).
pub fn run_example_pk(p: u64, eps: &Rational, kmax: u32) -> Result<PkReport> {
    if !is_prime_u64(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if !eps.is_positive() || LogReal::log_prime(p).cmp_rational(eps, DEFAULT_PREC) != Ordering::Greater {
        return Err(Error::Precondition(format!("need 0 < epsilon < log {p}")));
    }
    let pq = Rational::from_integer(p.into());
    let one = PowerSum::constant(Rational::one());
    let f = PowerSum::index().mul(&PowerSum::geometric(Rational::one(), pq.clone())).add(&one);
    let g = PowerSum::geometric(Rational::one(), pq).add(&one);
    let mut rows = vec![];
    for k in 1..=kmax {
        let m = p.checked_pow(k).filter(|&m| m <= 1 << 20).ok_or_else(|| Error::Budget(format!("p^{k} too large")))?;
        let n = m + k as u64;
        let (a, b) = (f.eval(m), g.eval(n));
        let lhs = log_gcd(&a, &b)?.into_inner();
        let threshold = eps * Rational::from_integer(n.into());
        let flagged = exceeds(&lhs, &threshold);
        let kappa = min_log_multiple(k as u64, n).expect("n > 1");
        rows.push(PkRow { k, m, n, equal: a == b, lhs, threshold, flagged, offset: k as u64, kappa });
    }
    let off_every_line = rows.windows(2).all(|w| w[0].offset < w[1].offset);
    Ok(PkReport { p, epsilon: eps.clone(), rows, off_every_line })
}

#[derive(Clone, Debug)]
pub struct SharpnessRow {
    pub m: u64,
    pub n: u64,
    pub height: LogReal,
    pub h_sbar: LogReal,
    pub lhs: LogReal,
    /// lhs >= delta h(P) / 2, exactly.
    pub holds: bool,
    /// lhs <= delta h(P), exactly.
    pub at_most_delta: bool,
    /// lhs / (delta h(P)) as a float, for display.
    pub ratio: f64,
}

#[derive(Clone, Debug)]
pub struct SharpnessReport {
    pub p: u64,
    pub delta: Rational,
    pub rows: Vec<SharpnessRow>,
    /// m values where no n puts P inside the window.
    pub failures: Vec<u64>,
}

fn point(p: u64, m: u64, n: u64) -> TorusPoint {
    let p = BigInt::from(p);
    let x = Rational::from_integer(p.pow(m as u32));
    let u = Rational::from_integer(p.pow(n as u32));
    TorusPoint::new(vec![x.clone(), u * (x + Rational::one())]).expect("nonzero coordinates")
}

/// delta h(P) / 2 <= h_Sbar(P) <= delta h(P) for P = (p^m, p^n (p^m + 1)) and S = {inf, p}.
pub fn sharpness_window(p: u64, delta: &Rational, m: u64, n: u64) -> Result<bool> {
    let s = PlaceSet::with_infinity([p])?;
    let pt = point(p, m, n);
    if !is_almost_unit_tuple(&pt, &AlmostUnitConfig::new(s.clone(), delta.clone())?)? {
        return Ok(false);
    }
    let lower = tuple_height(&pt).scale(&(delta / Rational::from_integer(2.into())));
    Ok(h_sbar_tuple(&pt, &s)?.cmp_logreal(&lower, DEFAULT_PREC) != Ordering::Less)
}

/// For m = 1..=trials picks the least n placing P in the window, then checks
/// log gcd(x1 + 1, x2) at P against delta h(P) / 2.
pub fn run_sharpness(p: u64, delta: &Rational, trials: u64) -> Result<SharpnessReport> {
    if !is_prime_u64(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if !delta.is_positive() || *delta >= Rational::one() {
        return Err(Error::Precondition("need 0 < delta < 1".into()));
    }
    let cfg = AlmostUnitConfig::new(PlaceSet::with_infinity([p])?, delta.clone())?;
    let mut rows = vec![];
    let mut failures = vec![];
    for m in 1..=trials {
        // h_Sbar = log(p^m + 1) is fixed while h(P) grows with n, so the upper window
        // condition is monotone in n
        let n_cap = (m + 1) * (delta.recip().ceil().to_integer().try_into().unwrap_or(u64::MAX / 4) + 1);
        let found = (1..=n_cap).find(|&n| is_almost_unit_tuple(&point(p, m, n), &cfg).unwrap_or(false));
        let Some(n) = found.filter(|&n| sharpness_window(p, delta, m, n).unwrap_or(false)) else {
            failures.push(m);
            continue;
        };
        let pt = point(p, m, n);
        let height = tuple_height(&pt);
        let h_sbar = h_sbar_tuple(&pt, cfg.s())?;
        let c = pt.coords();
        let lhs = log_gcd(&(&c[0] + Rational::one()), &c[1])?.into_inner();
        let dh = height.scale(delta);
        let holds = lhs.cmp_logreal(&dh.scale(&Rational::new(1.into(), 2.into())), DEFAULT_PREC) != Ordering::Less;
        let at_most_delta = lhs.cmp_logreal(&dh, DEFAULT_PREC) != Ordering::Greater;
        let ratio = lhs.to_f64() / dh.to_f64();
        rows.push(SharpnessRow { m, n, height, h_sbar, lhs, holds, at_most_delta, ratio });
    }
    Ok(SharpnessReport { p, delta: delta.clone(), rows, failures })
}
