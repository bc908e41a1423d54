use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::qstr;
use crate::error::{Error, Result};
use crate::gengcd::log_gcd_split;
use crate::heights::{height, is_almost_unit_tuple, AlmostUnitConfig, TorusPoint};
use crate::hilbert::{theorem_constants, TheoremConstants};
use crate::interval::Interval;
use crate::logreal::LogReal;
use crate::multipoly::{coprime, MultiPoly};
use crate::places::PlaceSet;
use crate::{Rational, DEFAULT_PREC};

fn default_perturbation() -> u64 {
    1
}

fn default_retries() -> usize {
    200
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SampleConfig {
    pub f: String,
    pub g: String,
    pub nvars: usize,
    #[serde(rename = "S")]
    pub s: PlaceSet,
    #[serde(with = "qstr")]
    pub delta: Rational,
    pub count: usize,
    pub generator_exponent_bound: u32,
    /// Numerators and denominators of the non-S perturbation are drawn from 1..=bound.
    #[serde(default = "default_perturbation")]
    pub perturbation_bound: u64,
    /// When set, the second coordinate is forced to u1 + shift.
    #[serde(default, with = "qstr::opt")]
    pub translate: Option<Rational>,
    #[serde(default = "default_retries")]
    pub max_retries: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Violated,
    Undecided,
}

#[derive(Clone, Debug)]
pub struct PolyGcdRow {
    pub index: usize,
    pub u: Vec<Rational>,
    pub sum_h: LogReal,
    pub lhs_outside: Option<LogReal>,
    pub lhs_within: Option<LogReal>,
    /// Reason the row is excluded from the audit (f(u) = 0 or g(u) = 0).
    pub degenerate: Option<String>,
    pub main: Option<Verdict>,
    pub spart: Option<Verdict>,
    pub combined: Option<Verdict>,
    pub rhs_main: f64,
    pub rhs_spart: Option<f64>,
    pub rhs_combined: f64,
}

#[derive(Clone, Debug)]
pub struct PolyGcdReport {
    pub constants: TheoremConstants,
    /// Degree used for the S-part bound, if some input does not vanish at the origin.
    pub spart_degree: Option<u32>,
    pub rows: Vec<PolyGcdRow>,
    /// Samples for which the delta filter never accepted a draw.
    pub sampler_failures: usize,
    /// Candidate exceptional points: degenerate rows and violations.
    pub candidates: Vec<usize>,
}

fn is_square(q: &Rational) -> Option<Rational> {
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::new(rn, rd))
}

/// lhs < c * sqrt(delta) * h, certified.
fn below_sqrt(lhs: &LogReal, c: u64, delta: &Rational, h: &LogReal) -> Verdict {
    if let Some(r) = is_square(delta) {
        return below(lhs, &(r * Rational::from_integer(c.into())), h);
    }
    if lhs.is_zero() {
        return Verdict::Holds;
    }
    if h.is_zero() {
        return Verdict::Violated;
    }
    let c = Rational::from_integer(c.into());
    let mut p = DEFAULT_PREC;
    while p <= 8192 {
        let rhs = Interval::sqrt_rational(delta, p).mul(&h.enclose(p)).scale(&c);
        match lhs.enclose(p).sub(&rhs).sign() {
            Some(Ordering::Less) => return Verdict::Holds,
            Some(Ordering::Greater) => return Verdict::Violated,
            _ => p *= 2,
        }
    }
    Verdict::Undecided
}

/// lhs < c * h exactly; 0 < 0 is counted as holding.
fn below(lhs: &LogReal, c: &Rational, h: &LogReal) -> Verdict {
    match (lhs - &h.scale(c)).sign(DEFAULT_PREC) {
        Ordering::Less => Verdict::Holds,
        Ordering::Equal if lhs.is_zero() => Verdict::Holds,
        _ => Verdict::Violated,
    }
}

fn coprime_to(x: u64, s: &PlaceSet) -> bool {
    s.primes().iter().all(|p| !x.is_multiple_of(*p))
}

struct Sampler<'a> {
    cfg: &'a SampleConfig,
    rng: ChaCha8Rng,
}

impl Sampler<'_> {
    fn perturbation_part(&mut self) -> u64 {
        let b = self.cfg.perturbation_bound.max(1);
        loop {
            let x = self.rng.gen_range(1..=b);
            if coprime_to(x, &self.cfg.s) {
                return x;
            }
        }
    }

    fn coordinate(&mut self) -> Rational {
        let bound = self.cfg.generator_exponent_bound as i32;
        let mut u = Rational::one();
        for &p in self.cfg.s.primes() {
            let e = self.rng.gen_range(-bound..=bound);
            u *= num_traits::pow::Pow::pow(&Rational::from_integer(p.into()), e);
        }
        if self.rng.gen_bool(0.5) {
            u = -u;
        }
        let (a, b) = (self.perturbation_part(), self.perturbation_part());
        u * Rational::new(a.into(), b.into())
    }

    fn draw(&mut self, n: usize) -> Option<Vec<Rational>> {
        let mut u: Vec<Rational> = (0..n).map(|_| self.coordinate()).collect();
        if let (Some(shift), true) = (&self.cfg.translate, n >= 2) {
            u[1] = &u[0] + shift;
        }
        (!u.iter().any(|x| x.is_zero())).then_some(u)
    }
}

pub fn run_poly_gcd_experiment(cfg: &SampleConfig, seed: u64) -> Result<PolyGcdReport> {
    let n = cfg.nvars;
    let f = MultiPoly::parse(&cfg.f, n)?;
    let g = MultiPoly::parse(&cfg.g, n)?;
    if n == 0 || f.is_zero() || g.is_zero() {
        return Err(Error::Precondition("need n >= 1 and nonzero f, g".into()));
    }
    if !coprime(&f, &g)? {
        return Err(Error::Precondition("f and g must be coprime".into()));
    }
    if !cfg.delta.is_positive() {
        return Err(Error::Precondition("delta must lie in (0, 1)".into()));
    }
    let unit_cfg = AlmostUnitConfig::new(cfg.s.clone(), cfg.delta.clone()).map_err(|e| Error::Precondition(e.to_string()))?;
    let (df, dg) = (f.total_degree().max(1), g.total_degree().max(1));
    let spart_degree = [(&f, df), (&g, dg)].iter().filter(|(p, _)| !p.vanishes_at_origin()).map(|(_, d)| *d).min();
    let constants = theorem_constants(n, df.max(dg), df.min(dg), &cfg.delta, spart_degree.unwrap_or(1))?;

    let mut sampler = Sampler { cfg, rng: ChaCha8Rng::seed_from_u64(seed) };
    let mut samples = vec![];
    let mut sampler_failures = 0;
    for _ in 0..cfg.count {
        let mut got = None;
        for _ in 0..cfg.max_retries.max(1) {
            if let Some(u) = sampler.draw(n) {
                let pt = TorusPoint::new(u.clone())?;
                if is_almost_unit_tuple(&pt, &unit_cfg)? {
                    got = Some(u);
                    break;
                }
            }
        }
        match got {
            Some(u) => samples.push(u),
            None => sampler_failures += 1,
        }
    }

    let delta_f = cfg.delta.to_f64().unwrap_or(0.0);
    let sqrt_delta = delta_f.sqrt();
    let rows: Vec<PolyGcdRow> = samples
        .into_par_iter()
        .enumerate()
        .map(|(index, u)| -> Result<PolyGcdRow> {
            let sum_h: LogReal = u.iter().map(height).sum();
            let h = sum_h.to_f64();
            let rhs_main = constants.c_main as f64 * sqrt_delta * h;
            let rhs_combined = constants.c_combined as f64 * sqrt_delta * h;
            let spart_c = Rational::from_integer(BigInt::from(constants.c_spart)) * &cfg.delta;
            let rhs_spart = spart_degree.map(|_| h * constants.c_spart as f64 * delta_f);
            let (a, b) = (f.eval(&u)?, g.eval(&u)?);
            let mut row = PolyGcdRow {
                index,
                u,
                sum_h,
                lhs_outside: None,
                lhs_within: None,
                degenerate: None,
                main: None,
                spart: None,
                combined: None,
                rhs_main,
                rhs_spart,
                rhs_combined,
            };
            if a.is_zero() && b.is_zero() {
                row.degenerate = Some("f(u) = g(u) = 0".into());
                return Ok(row);
            }
            let split = log_gcd_split(&a, &b, &cfg.s)?;
            row.lhs_outside = Some(split.outside.clone());
            row.lhs_within = Some(split.within.clone());
            if a.is_zero() || b.is_zero() {
                row.degenerate = Some(if a.is_zero() { "f(u) = 0" } else { "g(u) = 0" }.into());
                return Ok(row);
            }
            row.main = Some(below_sqrt(&split.outside, constants.c_main, &cfg.delta, &row.sum_h));
            row.spart = spart_degree.map(|_| below(&split.within, &spart_c, &row.sum_h));
            let total = &split.outside + &split.within;
            row.combined = Some(below_sqrt(&total, constants.c_combined, &cfg.delta, &row.sum_h));
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let candidates = rows
        .iter()
        .filter(|r| {
            r.degenerate.is_some()
                || [r.main, r.spart, r.combined].contains(&Some(Verdict::Violated))
        })
        .map(|r| r.index)
        .collect();
    Ok(PolyGcdReport { constants, spart_degree, rows, sampler_failures, candidates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::places::rat;

    fn cfg(f: &str, g: &str, translate: Option<Rational>, pert: u64) -> SampleConfig {
        SampleConfig {
            f: f.into(),
            g: g.into(),
            nvars: 2,
            s: PlaceSet::with_infinity([2]).unwrap(),
            delta: rat(1, 25),
            count: 30,
            generator_exponent_bound: 5,
            perturbation_bound: pert,
            translate,
            max_retries: 200,
        }
    }

    #[test]
    fn pure_units_satisfy_main_bound() {
        let r = run_poly_gcd_experiment(&cfg("x1 + 1", "x2", None, 1), 7).unwrap();
        assert_eq!(r.rows.len(), 30);
        assert_eq!(r.sampler_failures, 0);
        for row in &r.rows {
            if row.degenerate.is_some() {
                assert_eq!(row.u[0], -Rational::one());
                continue;
            }
            assert_eq!(row.main, Some(Verdict::Holds));
            assert!(row.lhs_outside.as_ref().unwrap().is_zero());
        }
    }

    #[test]
    fn translate_family_is_exceptional() {
        let r = run_poly_gcd_experiment(&cfg("x1 + 1", "x2 - x1 - 1", Some(Rational::one()), 1), 3).unwrap();
        assert!(!r.rows.is_empty());
        assert!(r.rows.iter().all(|row| row.degenerate.as_deref() == Some("g(u) = 0")));
        assert_eq!(r.candidates.len(), r.rows.len());
    }

    #[test]
    fn deterministic_under_seed() {
        let c = cfg("x1 + 1", "x2 + 3", None, 9);
        let a = run_poly_gcd_experiment(&c, 11).unwrap();
        let b = run_poly_gcd_experiment(&c, 11).unwrap();
        let us = |r: &PolyGcdReport| r.rows.iter().map(|x| x.u.clone()).collect::<Vec<_>>();
        assert_eq!(us(&a), us(&b));
    }

    #[test]
    fn rejects_common_factor() {
        let e = run_poly_gcd_experiment(&cfg("x1*x2 + x1", "x2 + 1", None, 1), 0);
        assert!(matches!(e, Err(Error::Precondition(_))));
    }

    #[test]
    fn certified_comparisons() {
        let l2 = LogReal::log_prime(2);
        assert_eq!(below_sqrt(&l2, 1, &rat(1, 2), &l2), Verdict::Violated);
        assert_eq!(below_sqrt(&l2, 2, &rat(1, 2), &l2), Verdict::Holds);
        assert_eq!(below_sqrt(&l2, 2, &rat(1, 4), &l2), Verdict::Violated);
        assert_eq!(below(&LogReal::zero(), &rat(1, 2), &LogReal::zero()), Verdict::Holds);
    }
}
