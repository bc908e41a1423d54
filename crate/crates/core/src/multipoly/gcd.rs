//! Multivariate gcd over Q: content / primitive-part recursion with pseudo-remainder
//! sequences in the highest occurring variable.

use num_traits::{One, Zero};

use super::MultiPoly;
use crate::error::{domain, Result};
use crate::Rational;

fn main_var(f: &MultiPoly, g: &MultiPoly) -> Option<usize> {
    (0..f.nvars()).rev().find(|&i| f.uses_var(i) || g.uses_var(i))
}

fn content_in(f: &MultiPoly, x: usize) -> MultiPoly {
    let mut c = MultiPoly::zero(f.nvars());
    for (_, k) in f.coeffs_in(x) {
        c = gcd(&c, &k);
        if c.is_constant() && !c.is_zero() {
            return MultiPoly::one(f.nvars());
        }
    }
    c
}

fn primitive_in(f: &MultiPoly, x: usize) -> MultiPoly {
    let c = content_in(f, x);
    f.div_exact(&c).expect("content divides")
}

/// Scales f to integer coefficients with gcd 1, keeping coefficient growth in check.
fn numeric_primitive(f: &MultiPoly) -> MultiPoly {
    use num_integer::Integer;
    let den = f.terms().fold(num_bigint::BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
    let num = f.terms().fold(num_bigint::BigInt::zero(), |g, (_, c)| g.gcd(&(c * Rational::from_integer(den.clone())).to_integer()));
    f.scale(&Rational::new(den, num))
}

fn leading_coeff_in(f: &MultiPoly, x: usize) -> (u32, MultiPoly) {
    let mut cs = f.coeffs_in(x);
    cs.pop_last().expect("nonzero polynomial")
}

fn x_power(n: usize, x: usize, k: u32) -> super::MultiIndex {
    let mut e = super::MultiIndex::zero(n);
    e.0[x] = k;
    e
}

/// Pseudo-remainder of a by b with respect to variable x.
fn prem(a: &MultiPoly, b: &MultiPoly, x: usize) -> MultiPoly {
    let n = a.nvars();
    let (db, lb) = leading_coeff_in(b, x);
    let mut r = a.clone();
    while !r.is_zero() {
        let (dr, lr) = leading_coeff_in(&r, x);
        if dr < db {
            break;
        }
        let shifted = b.mul_term(&x_power(n, x, dr - db), &Rational::one());
        r = &(&lb * &r) - &(&lr * &shifted);
    }
    r
}

fn gcd_rec(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let n = f.nvars();
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one(n);
    }
    let x = main_var(f, g).expect("nonconstant");
    if !f.uses_var(x) {
        return gcd(f, &content_in(g, x));
    }
    if !g.uses_var(x) {
        return gcd(&content_in(f, x), g);
    }
    let cf = content_in(f, x);
    let cg = content_in(g, x);
    let c = gcd(&cf, &cg);
    let pf = f.div_exact(&cf).unwrap();
    let pg = g.div_exact(&cg).unwrap();
    let (mut a, mut b) = if pf.degree_in(x) >= pg.degree_in(x) { (pf, pg) } else { (pg, pf) };
    while !b.is_zero() {
        if !b.uses_var(x) {
            a = MultiPoly::one(n);
            break;
        }
        let r = prem(&a, &b, x);
        a = b;
        b = if r.is_zero() { r } else { numeric_primitive(&primitive_in(&r, x)) };
    }
    (&c * &primitive_in(&a, x)).monic()
}

/// Monic (graded-lex leading coefficient 1) greatest common divisor; gcd(0, 0) = 0.
pub fn gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    assert_eq!(f.nvars(), g.nvars());
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    gcd_rec(f, g)
}

type Uni = Vec<Rational>;

fn trim(p: &mut Uni) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn uni_rem(a: &Uni, b: &Uni) -> Uni {
    let mut r = a.clone();
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() {
        let c = r.last().unwrap() / &lb;
        let s = r.len() - b.len();
        for (i, bi) in b.iter().enumerate() {
            r[s + i] -= &c * bi;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn uni_gcd_degree(a: &Uni, b: &Uni) -> usize {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = uni_rem(&a, &b);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

/// Coefficients in x after substituting `point` for the other variables.
fn specialize(f: &MultiPoly, x: usize, point: &[Rational]) -> Uni {
    let mut out = vec![Rational::zero(); f.degree_in(x) as usize + 1];
    for (e, c) in f.terms() {
        let mut t = c.clone();
        for (i, &k) in e.0.iter().enumerate() {
            if i != x && k > 0 {
                t *= num_traits::pow::Pow::pow(&point[i], k);
            }
        }
        out[e.0[x] as usize] += t;
    }
    trim(&mut out);
    out
}

/// If a common factor involved x, it would survive any specialization of the other
/// variables that keeps the x-degree of f; a trivial specialized gcd rules x out.
fn certify_var(f: &MultiPoly, g: &MultiPoly, x: usize) -> bool {
    let n = f.nvars();
    let df = f.degree_in(x) as usize;
    for trial in 0..4i64 {
        let point: Vec<Rational> = (0..n)
            .map(|i| Rational::from_integer((((i as i64 + 3) * (trial * 7 + 5)) % 23 - 11).into()))
            .collect();
        let fa = specialize(f, x, &point);
        let ga = specialize(g, x, &point);
        if fa.len() != df + 1 || ga.is_empty() {
            continue;
        }
        if uni_gcd_degree(&fa, &ga) == 0 {
            return true;
        }
    }
    false
}

/// True iff gcd(f, g) is a nonzero constant.
pub fn coprime(f: &MultiPoly, g: &MultiPoly) -> Result<bool> {
    if f.is_zero() || g.is_zero() {
        return domain("coprimality with the zero polynomial");
    }
    if f.nvars() != g.nvars() {
        return domain("variable counts differ");
    }
    let shared: Vec<usize> = (0..f.nvars()).filter(|&i| f.uses_var(i) && g.uses_var(i)).collect();
    if shared.iter().all(|&x| certify_var(f, g, x)) {
        return Ok(true);
    }
    Ok(gcd(f, g).is_constant())
}
