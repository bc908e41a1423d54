use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{fmt_terms, MultiIndex, MultiPoly};
use crate::error::{domain, Result};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, Rational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn monomial(nvars: usize, e: Vec<i64>, c: Rational) -> Self {
        assert_eq!(e.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { nvars, terms }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Rational::one())
    }

    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Vec<i64>, Rational)>) -> Self {
        let mut terms: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
        for (e, c) in it {
            assert_eq!(e.len(), nvars);
            *terms.entry(e).or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { nvars, terms }
    }

    pub fn parse(s: &str, nvars: usize) -> Result<Self> {
        super::parse::parse_laurent(s, nvars)
    }

    pub fn from_poly(p: &MultiPoly) -> Self {
        LaurentPoly {
            nvars: p.nvars(),
            terms: p.terms().map(|(e, c)| (e.0.iter().map(|&k| k as i64).collect(), c.clone())).collect(),
        }
    }

    /// The same polynomial if no exponent is negative.
    pub fn to_poly(&self) -> Option<MultiPoly> {
        let mut out = vec![];
        for (e, c) in &self.terms {
            let v: Option<Vec<u32>> = e.iter().map(|&k| u32::try_from(k).ok()).collect();
            out.push((MultiIndex(v?), c.clone()));
        }
        Some(MultiPoly::from_terms(self.nvars, out))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(e, x)| (e.clone(), x * c)))
    }

    /// 1/self when self is a single term.
    pub fn invert_monomial(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Some(Self::monomial(self.nvars, e.iter().map(|k| -k).collect(), c.recip()))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::constant(self.nvars, Rational::one());
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    pub fn eval(&self, u: &[Rational]) -> Result<Rational> {
        if u.len() != self.nvars {
            return domain(format!("expected {} coordinates, got {}", self.nvars, u.len()));
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in u.iter().zip(e) {
                if k < 0 && x.is_zero() {
                    return domain("zero coordinate under a negative exponent");
                }
                if k != 0 {
                    t *= num_traits::pow::Pow::pow(x, k as i32);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// f = x^mono * f0 with f0 a polynomial divisible by no variable.
    pub fn normalize(&self) -> Result<(Vec<i64>, MultiPoly)> {
        if self.is_zero() {
            return domain("normalizing the zero Laurent polynomial");
        }
        let mono: Vec<i64> =
            (0..self.nvars).map(|i| self.terms.keys().map(|e| e[i]).min().unwrap()).collect();
        let f0 = MultiPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, c)| {
                (MultiIndex(e.iter().zip(&mono).map(|(a, b)| (a - b) as u32).collect()), c.clone())
            }),
        );
        Ok((mono, f0))
    }

    pub fn mul_monomial(&self, e: &[i64]) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(f, c)| (f.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone())),
        )
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut ts: Vec<(&Vec<i64>, &Rational)> = self.terms.iter().collect();
        ts.sort_by(|a, b| {
            let da: i64 = a.0.iter().sum();
            let db: i64 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        write!(f, "{}", fmt_terms(ts.into_iter().map(|(e, c)| (e.clone(), c)), 1))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(self.nvars, self.terms.iter().chain(o.terms.iter()).map(|(e, c)| (e.clone(), c.clone())))
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self + &(-o)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = vec![];
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                out.push((e.iter().zip(f).map(|(a, b)| a + b).collect(), c * d));
            }
        }
        LaurentPoly::from_terms(self.nvars, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::places::{int, rat};

    #[test]
    fn evaluation() {
        let f = LaurentPoly::parse("x1^2*x2^-1", 2).unwrap();
        assert_eq!(f.eval(&[int(2), int(3)]).unwrap(), rat(4, 3));
        assert!(f.eval(&[int(2), int(0)]).is_err());
    }

    #[test]
    fn normalization() {
        let cases = [
            ("x1^-2*(x1+1)", 1, vec![-2], "x1 + 1"),
            ("x1*x2", 2, vec![1, 1], "1"),
            ("x1^2 + x1^3*x2", 2, vec![2, 0], "x1*x2 + 1"),
        ];
        for (s, n, mono, f0) in cases {
            let f = LaurentPoly::parse(s, n).unwrap();
            let (m, p) = f.normalize().unwrap();
            assert_eq!(m, mono);
            assert_eq!(p.to_string(), f0);
            assert_eq!(LaurentPoly::from_poly(&p).mul_monomial(&m), f);
        }
        assert!(LaurentPoly::zero(1).normalize().is_err());
    }
}
