//! Multivariate and Laurent polynomials over Q with graded-lex term order.

mod gcd;
mod laurent;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::Rational;

pub use gcd::{coprime, gcd};
pub use laurent::LaurentPoly;

/// Exponent vector; ordered graded-lexicographically (total degree first, then
/// lexicographic with x1 > x2 > ...).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// self - o when o divides self.
    pub fn checked_sub(&self, o: &MultiIndex) -> Option<MultiIndex> {
        self.0.iter().zip(&o.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(MultiIndex)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// All exponent vectors in n variables of total degree exactly d, in ascending graded-lex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<MultiIndex> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in 0..=d {
            prefix.push(a);
            rec(n, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = vec![];
    if n == 0 {
        if d == 0 {
            out.push(MultiIndex(vec![]));
        }
        return out;
    }
    rec(n, d, &mut vec![], &mut out);
    out
}

/// All exponent vectors of total degree at most m, ascending graded-lex.
pub fn monomials_up_to(n: usize, m: u32) -> Vec<MultiIndex> {
    (0..=m).flat_map(|d| monomials_of_degree(n, d)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, MultiIndex::zero(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The variable x_{i+1} (0-based index i).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, MultiIndex::unit(nvars, i), Rational::one())
    }

    pub fn monomial(nvars: usize, e: MultiIndex, c: Rational) -> Self {
        assert_eq!(e.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MultiPoly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (MultiIndex, Rational)>) -> Self {
        let mut terms: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
        for (e, c) in it {
            assert_eq!(e.len(), nvars);
            *terms.entry(e).or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly { nvars, terms }
    }

    pub fn parse(s: &str, nvars: usize) -> Result<Self> {
        parse::parse_poly(s, nvars)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &MultiIndex) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.degree() == 0)
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e.0[i]).max().unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<(&MultiIndex, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&MultiIndex::zero(self.nvars))
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.constant_term().is_zero()
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.total_degree();
        self.terms.keys().all(|e| e.degree() == d)
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e.0[i] > 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    /// Multiply by the monomial c * x^e.
    pub fn mul_term(&self, e: &MultiIndex, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(f, x)| (f.add(e), x * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.nvars);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Scaled so that the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn eval(&self, u: &[Rational]) -> Result<Rational> {
        if u.len() != self.nvars {
            return domain(format!("expected {} coordinates, got {}", self.nvars, u.len()));
        }
        let maxdeg: Vec<u32> = (0..self.nvars).map(|i| self.degree_in(i)).collect();
        let powers: Vec<Vec<Rational>> = u
            .iter()
            .zip(&maxdeg)
            .map(|(x, &d)| {
                let mut p = vec![Rational::one()];
                for k in 0..d as usize {
                    let next = &p[k] * x;
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.0.iter().enumerate() {
                if k > 0 {
                    t *= &powers[i][k as usize];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// x0^d f(x1/x0, ..., xn/x0) in n+1 variables; the new variable takes index 0.
    pub fn homogenize(&self) -> Self {
        let d = self.total_degree();
        MultiPoly::from_terms(
            self.nvars + 1,
            self.terms.iter().map(|(e, c)| {
                let mut v = vec![d - e.degree()];
                v.extend_from_slice(&e.0);
                (MultiIndex(v), c.clone())
            }),
        )
    }

    /// Set variable i to 1 and drop it.
    pub fn dehomogenize(&self, i: usize) -> Self {
        MultiPoly::from_terms(
            self.nvars - 1,
            self.terms.iter().map(|(e, c)| {
                let mut v = e.0.clone();
                v.remove(i);
                (MultiIndex(v), c.clone())
            }),
        )
    }

    /// Reinterpret in `nvars` >= current variables, placing variable j at index j + offset.
    pub fn embed(&self, nvars: usize, offset: usize) -> Self {
        assert!(offset + self.nvars <= nvars);
        MultiPoly::from_terms(
            nvars,
            self.terms.iter().map(|(e, c)| {
                let mut v = vec![0; nvars];
                v[offset..offset + self.nvars].copy_from_slice(&e.0);
                (MultiIndex(v), c.clone())
            }),
        )
    }

    /// Coefficients with respect to variable i, as polynomials not involving it.
    pub fn coeffs_in(&self, i: usize) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut v = e.clone();
            let k = v.0[i];
            v.0[i] = 0;
            out.entry(k).or_insert_with(|| MultiPoly::zero(self.nvars)).terms.insert(v, c.clone());
        }
        out
    }

    /// Exact quotient self / d, or None if d does not divide self.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (de, dc) = d.leading_term()?;
        let (de, dc) = (de.clone(), dc.clone());
        let mut r = self.clone();
        let mut q = MultiPoly::zero(self.nvars);
        while let Some((re, rc)) = r.leading_term() {
            let e = re.checked_sub(&de)?;
            let c = rc / &dc;
            r = &r - &d.mul_term(&e, &c);
            q.terms.insert(e, c);
        }
        Some(q)
    }

    /// Rendering with variables named `prefix{first + i}`.
    pub fn display_with(&self, first: usize) -> String {
        fmt_terms(self.terms.iter().rev().map(|(e, c)| (e.0.iter().map(|&k| k as i64).collect(), c)), first)
    }
}

pub(crate) fn fmt_terms<'a>(terms: impl Iterator<Item = (Vec<i64>, &'a Rational)>, first: usize) -> String {
    let mut s = String::new();
    for (idx, (e, c)) in terms.enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if idx == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let vars: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k != 0)
            .map(|(i, &k)| if k == 1 { format!("x{}", i + first) } else { format!("x{}^{}", i + first, k) })
            .collect();
        if vars.is_empty() {
            s.push_str(&a.to_string());
        } else {
            if !a.is_one() {
                s.push_str(&format!("{a}*"));
            }
            s.push_str(&vars.join("*"));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(1))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            let entry = terms.entry(e.clone()).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        MultiPoly { nvars: self.nvars, terms }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self + &(-o)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut terms: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                *terms.entry(e.add(f)).or_insert_with(Rational::zero) += c * d;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly { nvars: self.nvars, terms }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly { (&self).$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

/// Clears denominators: returns integer coefficients aligned with `cols`, primitive up to sign.
pub fn integer_coords(p: &MultiPoly, index: &std::collections::HashMap<MultiIndex, usize>, ncols: usize) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in p.terms.values() {
        l = num_integer::Integer::lcm(&l, c.denom());
    }
    let mut v = vec![BigInt::zero(); ncols];
    for (e, c) in &p.terms {
        v[index[e]] = c.numer() * (&l / c.denom());
    }
    v
}
