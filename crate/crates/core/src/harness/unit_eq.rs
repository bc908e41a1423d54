use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::heights::{is_almost_unit, AlmostUnitConfig};
use crate::places::PlaceSet;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitEqReport {
    /// Solutions of x0 + ... + xn = 1 with no vanishing proper subsum, sorted.
    pub solutions: Vec<Vec<Rational>>,
    /// Solutions with a vanishing proper subsum, kept apart.
    pub degenerate: Vec<Vec<Rational>>,
    /// How often each value occurs as a coordinate of a nondegenerate solution, and, when
    /// delta was given, whether it is an almost-(S, delta)-unit.
    pub frequency: Vec<(Rational, usize, Option<bool>)>,
    pub examined: u64,
    pub truncated: bool,
}

/// +-prod_{p in S} p^e with |e| <= bound, sorted.
pub fn s_units_in_box(s: &PlaceSet, bound: u32) -> Vec<Rational> {
    let mut units = vec![Rational::one()];
    for &p in s.primes() {
        let pq = Rational::from_integer(p.into());
        let powers: Vec<Rational> = (-(bound as i32)..=bound as i32).map(|e| num_traits::pow::Pow::pow(&pq, e)).collect();
        units = units.iter().flat_map(|u| powers.iter().map(move |x| u * x)).collect();
    }
    let mut all: Vec<Rational> = units.iter().flat_map(|u| [u.clone(), -u.clone()]).collect();
    all.sort();
    all
}

fn has_vanishing_subsum(x: &[Rational]) -> bool {
    let k = x.len();
    (1u64..(1 << k) - 1).any(|mask| {
        (0..k).filter(|i| mask >> i & 1 == 1).fold(Rational::zero(), |a, i| a + &x[i]).is_zero()
    })
}

/// Enumerates (x0, ..., xn) of S-units in the exponent box with x0 + ... + xn = 1, examining at
/// most `budget` candidate prefixes.
pub fn solve_unit_equation(
    s: &PlaceSet,
    n: usize,
    bound: u32,
    delta: Option<&Rational>,
    budget: u64,
) -> Result<UnitEqReport> {
    if n < 1 || bound < 1 {
        return domain("need n >= 1 and exponent bound >= 1");
    }
    let cfg = delta.map(|d| AlmostUnitConfig::new(s.clone(), d.clone())).transpose()?;
    let units = s_units_in_box(s, bound);
    let members: HashSet<&Rational> = units.iter().collect();
    let mut solutions = vec![];
    let mut degenerate = vec![];
    let mut examined = 0u64;
    let mut truncated = false;
    let mut idx = vec![0usize; n];
    'outer: loop {
        if examined >= budget {
            truncated = true;
            break;
        }
        examined += 1;
        let mut x: Vec<Rational> = idx.iter().map(|&i| units[i].clone()).collect();
        let last = Rational::one() - x.iter().fold(Rational::zero(), |a, b| a + b);
        if members.contains(&last) {
            x.push(last);
            if has_vanishing_subsum(&x) {
                degenerate.push(x);
            } else {
                solutions.push(x);
            }
        }
        for slot in idx.iter_mut() {
            *slot += 1;
            if *slot < units.len() {
                continue 'outer;
            }
            *slot = 0;
        }
        break;
    }
    solutions.sort();
    degenerate.sort();
    let mut counts: BTreeMap<Rational, usize> = BTreeMap::new();
    for x in solutions.iter().flatten() {
        *counts.entry(x.clone()).or_default() += 1;
    }
    let frequency = counts
        .into_iter()
        .map(|(v, c)| {
            let flag = cfg.as_ref().map(|cfg| is_almost_unit(&v, cfg)).transpose()?;
            Ok((v, c, flag))
        })
        .collect::<Result<_>>()?;
    Ok(UnitEqReport { solutions, degenerate, frequency, examined, truncated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::places::{int, rat};

    #[test]
    fn two_three_bound_one() {
        let s = PlaceSet::with_infinity([2, 3]).unwrap();
        let r = solve_unit_equation(&s, 1, 1, None, u64::MAX).unwrap();
        let mut want = vec![
            vec![int(3), int(-2)],
            vec![int(-2), int(3)],
            vec![int(2), int(-1)],
            vec![int(-1), int(2)],
            vec![rat(1, 3), rat(2, 3)],
            vec![rat(2, 3), rat(1, 3)],
            vec![rat(1, 2), rat(1, 2)],
            vec![rat(3, 2), rat(-1, 2)],
            vec![rat(-1, 2), rat(3, 2)],
        ];
        want.sort();
        assert_eq!(r.solutions, want);
        assert!(r.degenerate.is_empty() && !r.truncated);
    }

    #[test]
    fn vanishing_subsums_kept_apart() {
        let s = PlaceSet::with_infinity([2]).unwrap();
        let r = solve_unit_equation(&s, 2, 1, Some(&rat(1, 2)), u64::MAX).unwrap();
        assert!(r.degenerate.contains(&vec![int(1), int(2), int(-2)]));
        assert!(r.solutions.iter().all(|x| !has_vanishing_subsum(x)));
        assert!(r.frequency.iter().all(|(_, _, f)| *f == Some(true)));
    }

    #[test]
    fn budget_truncates() {
        let s = PlaceSet::with_infinity([2, 3]).unwrap();
        let r = solve_unit_equation(&s, 2, 1, None, 10).unwrap();
        assert!(r.truncated);
        assert_eq!(r.examined, 10);
    }

    #[test]
    fn box_is_exponentwise() {
        let u = s_units_in_box(&PlaceSet::with_infinity([2]).unwrap(), 3);
        assert_eq!(u.len(), 14);
        assert!(!u.contains(&rat(3, 4)));
    }
}
