use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::logreal::LogReal;
use crate::lrs::PowerSum;
use crate::places::{abs_at, log_abs, Place};
use crate::{Rational, DEFAULT_PREC};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rec1Row {
    pub n: u64,
    /// -log |F(n)|_v
    pub value: LogReal,
    pub violator: bool,
}

#[derive(Clone, Debug)]
pub struct Rec1Report {
    pub place: Place,
    pub epsilon: Rational,
    pub rows: Vec<Rec1Row>,
    pub zeros: Vec<u64>,
    pub violators: Vec<u64>,
}

impl Rec1Report {
    pub fn max_violator(&self) -> Option<u64> {
        self.violators.last().copied()
    }
}

/// Scans -log|F(n)|_v >= eps * n for 1 <= n <= N.
pub fn run_rec1_scan(f: &PowerSum, v: Place, eps: &Rational, n: u64) -> Result<Rec1Report> {
    if f.is_zero() || f.is_degenerate() {
        return Err(Error::Precondition("F must be nonzero and nondegenerate".into()));
    }
    if !f.roots().iter().any(|r| abs_at(r, v) >= Rational::one()) {
        return Err(Error::Precondition(format!("every root is small at {v}")));
    }
    if *eps <= Rational::zero() {
        return Err(Error::Precondition("epsilon must be positive".into()));
    }
    let vals = f.eval_range(n);
    let mut rows = vec![];
    let mut zeros = vec![];
    let mut violators = vec![];
    for (i, x) in vals.iter().enumerate().skip(1) {
        let i = i as u64;
        if x.is_zero() {
            zeros.push(i);
            continue;
        }
        let value = -log_abs(x, v)?;
        let t = eps * Rational::from_integer(i.into());
        let violator = !value.cmp_rational(&t, DEFAULT_PREC).is_lt();
        if violator {
            violators.push(i);
        }
        rows.push(Rec1Row { n: i, value, violator });
    }
    Ok(Rec1Report { place: v, epsilon: eps.clone(), rows, zeros, violators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::places::{int, rat};

    fn two_minus_three() -> PowerSum {
        PowerSum::geometric(int(1), int(2)).sub(&PowerSum::geometric(int(1), int(3)))
    }

    #[test]
    fn archimedean_has_no_violators() {
        let r = run_rec1_scan(&two_minus_three(), Place::Archimedean, &rat(1, 10), 200).unwrap();
        assert!(r.violators.is_empty());
    }

    #[test]
    fn five_adic_violators() {
        let r = run_rec1_scan(&two_minus_three(), Place::finite(5).unwrap(), &rat(1, 10), 500).unwrap();
        assert_eq!(r.max_violator(), Some(30));
        assert_eq!(r.violators, vec![2, 4, 6, 8, 10, 12, 14, 16, 20, 30]);
    }

    #[test]
    fn degenerate_rejected() {
        let f = PowerSum::geometric(int(1), int(2)).add(&PowerSum::geometric(int(1), int(-2)));
        assert!(matches!(run_rec1_scan(&f, Place::Archimedean, &rat(1, 10), 10), Err(Error::Precondition(_))));
        let small = PowerSum::geometric(int(1), rat(1, 2));
        assert!(run_rec1_scan(&small, Place::Archimedean, &rat(1, 10), 10).is_err());
    }
}
