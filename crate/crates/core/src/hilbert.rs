//! Truncated ideals (f, g)_(m), per-place greedy monomial bases, Hilbert-function counts of
//! coprime pairs, and the explicit constants of the polynomial gcd bounds.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::binom;
use crate::error::{domain, Result};
use crate::heights::TorusPoint;
use crate::linalg::{unit_vector, Echelon};
use crate::logreal::LogReal;
use crate::multipoly::{coprime, integer_coords, monomials_of_degree, monomials_up_to, MultiIndex, MultiPoly};
use crate::places::{log_abs, Place};
use crate::{Rational, DEFAULT_PREC};

/// Coordinatewise sum of all (n+1)-tuples of total degree m, by enumeration.
pub fn multiindex_sum(n: usize, m: u32) -> Vec<u128> {
    let mut acc = vec![0u128; n + 1];
    for e in monomials_of_degree(n + 1, m) {
        for (a, k) in acc.iter_mut().zip(&e.0) {
            *a += *k as u128;
        }
    }
    acc
}

/// m * C(n+m, n) / (n+1), the common coordinate of `multiindex_sum`.
pub fn multiindex_sum_closed(n: usize, m: u32) -> u128 {
    m as u128 * binom((n + m as usize) as i64, n as u32) / (n as u128 + 1)
}

/// dim of degree-l forms in n+1 variables modulo a regular sequence of degrees d1, d2.
pub fn dim_quotient_formula(n: usize, l: u32, d1: u32, d2: u32) -> u128 {
    let b = |t: i64| binom(t, n as u32) as i128;
    let (n, l, d1, d2) = (n as i64, l as i64, d1 as i64, d2 as i64);
    let v = b(l + n) - b(l + n - d1) - b(l + n - d2) + b(l + n - d1 - d2);
    assert!(v >= 0);
    v as u128
}

fn index_of(monos: &[MultiIndex]) -> HashMap<MultiIndex, usize> {
    monos.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect()
}

/// Span of {x^a F1 : |a| = l - d1} and {x^b F2 : |b| = l - d2} inside degree-l forms.
fn homogeneous_ideal_part(f1: &MultiPoly, f2: &MultiPoly, l: u32) -> (Vec<MultiIndex>, Echelon) {
    let nv = f1.nvars();
    let monos = monomials_of_degree(nv, l);
    let idx = index_of(&monos);
    let mut ech = Echelon::new(monos.len());
    for f in [f1, f2] {
        let d = f.total_degree();
        if d > l {
            continue;
        }
        for a in monomials_of_degree(nv, l - d) {
            ech.insert(integer_coords(&f.mul_term(&a, &Rational::one()), &idx, monos.len()));
        }
    }
    (monos, ech)
}

/// Brute-force dim S_l / (F1, F2)_l by exact rank computation.
pub fn quotient_dim_bruteforce(f1: &MultiPoly, f2: &MultiPoly, l: u32) -> usize {
    let (monos, ech) = homogeneous_ideal_part(f1, f2, l);
    monos.len() - ech.rank()
}

/// A monomial basis of S_l / (F1, F2)_l: the non-pivot columns of an echelon form.
pub fn quotient_monomial_basis(f1: &MultiPoly, f2: &MultiPoly, l: u32) -> Vec<MultiIndex> {
    let (monos, ech) = homogeneous_ideal_part(f1, f2, l);
    let pivots: std::collections::HashSet<usize> = ech.rows().map(|(p, _)| *p).collect();
    monos.into_iter().enumerate().filter(|(i, _)| !pivots.contains(i)).map(|(_, e)| e).collect()
}

/// (sum of ord_{x_i} over B, the Pascal-sum bound, the d1*d2*C(m+n-2, n-1) bound).
pub fn ord_sum_bounds(b: &[MultiIndex], i: usize, d1: u32, d2: u32, m: u32, n: usize) -> (u128, u128, u128) {
    let sum: u128 = b.iter().map(|e| e.0[i] as u128).sum();
    let c = |t: i64| binom(t, n as u32 + 1) as i128;
    let (mm, nn, a, z) = (m as i64, n as i64, d1 as i64, d2 as i64);
    let pascal = c(mm + nn) - c(mm + nn - a) - c(mm + nn - z) + c(mm + nn - a - z);
    let product = d1 as u128 * d2 as u128 * binom(mm + nn - 2, n as u32 - 1);
    (sum, pascal.max(0) as u128, product)
}

/// Both inequalities of the ord-sum estimate for a quotient basis B.
pub fn ord_sum_check(b: &[MultiIndex], i: usize, d1: u32, d2: u32, m: u32, n: usize) -> bool {
    let (s, p, q) = ord_sum_bounds(b, i, d1, d2, m, n);
    s <= p && p <= q
}

/// The vector space (f, g)_(m) inside polynomials of degree <= m.
#[derive(Clone, Debug)]
pub struct TruncatedIdeal {
    f: MultiPoly,
    g: MultiPoly,
    m: u32,
    monomials: Vec<MultiIndex>,
    index: HashMap<MultiIndex, usize>,
    echelon: Echelon,
}

pub fn truncated_ideal(f: &MultiPoly, g: &MultiPoly, m: u32) -> Result<TruncatedIdeal> {
    if f.is_zero() || g.is_zero() {
        return domain("truncated ideal of a zero polynomial");
    }
    if f.nvars() != g.nvars() {
        return domain("variable counts differ");
    }
    if m < f.total_degree().max(g.total_degree()) {
        return domain(format!("m = {m} below max(deg f, deg g)"));
    }
    let n = f.nvars();
    let monomials = monomials_up_to(n, m);
    let index = index_of(&monomials);
    let mut echelon = Echelon::new(monomials.len());
    for p in [f, g] {
        for a in monomials_up_to(n, m - p.total_degree()) {
            echelon.insert(integer_coords(&p.mul_term(&a, &Rational::one()), &index, monomials.len()));
        }
    }
    Ok(TruncatedIdeal { f: f.clone(), g: g.clone(), m, monomials, index, echelon })
}

impl TruncatedIdeal {
    pub fn f(&self) -> &MultiPoly {
        &self.f
    }

    pub fn g(&self) -> &MultiPoly {
        &self.g
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    /// N = dim (f, g)_(m).
    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    /// N' = C(m+n, n) - N.
    pub fn codim(&self) -> usize {
        self.monomials.len() - self.dim()
    }

    pub fn monomials(&self) -> &[MultiIndex] {
        &self.monomials
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool> {
        if p.nvars() != self.nvars() || p.total_degree() > self.m {
            return domain("polynomial outside the truncation");
        }
        Ok(self.echelon.contains(integer_coords(p, &self.index, self.monomials.len())))
    }
}

#[derive(Clone, Debug)]
pub struct GreedyBasis {
    pub place: Place,
    pub point: TorusPoint,
    /// Chosen exponents in selection order (non-decreasing weight).
    pub monomials: Vec<MultiIndex>,
}

fn weights(t: &TruncatedIdeal, u: &TorusPoint, v: Place) -> Result<Vec<LogReal>> {
    if u.dim() != t.nvars() {
        return domain("point dimension differs from the variable count");
    }
    let logs: Vec<LogReal> = u.coords().iter().map(|c| log_abs(c, v)).collect::<Result<_>>()?;
    Ok(t.monomials
        .iter()
        .map(|e| e.0.iter().zip(&logs).filter(|(k, _)| **k > 0).map(|(k, l)| l.scale_int(*k as i64)).sum())
        .collect())
}

/// Greedy choice of N' monomials independent modulo (f, g)_(m), minimizing log|u^i|_v at each
/// step; ties go to the smaller exponent in graded-lex order.
pub fn greedy_monomial_basis(t: &TruncatedIdeal, u: &TorusPoint, v: Place) -> Result<GreedyBasis> {
    let w = weights(t, u, v)?;
    let mut order: Vec<usize> = (0..t.monomials.len()).collect();
    order.sort_by(|&a, &b| match w[a].cmp_logreal(&w[b], DEFAULT_PREC) {
        Ordering::Equal => t.monomials[a].cmp(&t.monomials[b]),
        o => o,
    });
    let mut ech = t.echelon.clone();
    let mut chosen = vec![];
    let target = t.codim();
    for i in order {
        if chosen.len() == target {
            break;
        }
        if ech.insert(unit_vector(t.monomials.len(), i)) {
            chosen.push(t.monomials[i].clone());
        }
    }
    Ok(GreedyBasis { place: v, point: u.clone(), monomials: chosen })
}

#[derive(Clone, Debug, Default)]
pub struct DominanceReport {
    /// Non-basis monomials whose reductions were examined.
    pub checked: usize,
    /// (monomial, basis monomial of strictly larger weight used in its reduction).
    pub violations: Vec<(MultiIndex, MultiIndex)>,
}

/// Reduces every non-basis monomial onto the basis and checks that only basis monomials of
/// weight <= its own appear. Independent of the greedy routine: works from a reduced echelon
/// form with basis columns ordered last.
pub fn check_greedy_dominance(t: &TruncatedIdeal, b: &GreedyBasis) -> Result<DominanceReport> {
    let w = weights(t, &b.point, b.place)?;
    let in_basis: Vec<bool> = t.monomials.iter().map(|e| b.monomials.contains(e)).collect();
    let mut perm: Vec<usize> = (0..t.monomials.len()).filter(|&i| !in_basis[i]).collect();
    let nonbasis = perm.len();
    perm.extend((0..t.monomials.len()).filter(|&i| in_basis[i]));
    let mut ech = Echelon::new(perm.len());
    for (_, row) in t.echelon.rows() {
        ech.insert(perm.iter().map(|&j| row[j].clone()).collect());
    }
    let red = ech.into_reduced();
    if red.rank() != nonbasis || red.rows().any(|(p, _)| *p >= nonbasis) {
        return domain("basis is not a complement of the truncated ideal");
    }
    let mut report = DominanceReport::default();
    for (p, row) in red.rows() {
        let mono = perm[*p];
        report.checked += 1;
        for (col, c) in row.iter().enumerate().skip(nonbasis) {
            if c.is_zero() {
                continue;
            }
            let q = perm[col];
            if w[q].cmp_logreal(&w[mono], DEFAULT_PREC) == Ordering::Greater {
                report.violations.push((t.monomials[mono].clone(), t.monomials[q].clone()));
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremConstants {
    pub c_main: u64,
    pub m_main: u64,
    pub c_combined: u64,
    pub c_spart: u64,
    pub m_spart: u64,
    /// Whether m_spart <= 2n holds for these inputs.
    pub m_spart_within_2n: bool,
    pub i_spart: u128,
}

/// 1 + sum_{j=1}^{m-1} C(n + j d, n).
pub fn i_spart(n: usize, d: u32, m: u64) -> u128 {
    1 + (1..m).map(|j| binom(n as i64 + j as i64 * d as i64, n as u32)).sum::<u128>()
}

fn pow_q(x: &Rational, k: u32) -> Rational {
    num_traits::pow::Pow::pow(x, k)
}

/// ceil((n - t + 1) / (d (t - 1)) + 1) for t = 2^(1/d), certified by bisection on t.
fn m_spart(n: usize, d: u32) -> u64 {
    let f = |t: &Rational| {
        let n = Rational::from_integer((n as i64).into());
        let d = Rational::from_integer((d as i64).into());
        (&n - t + Rational::one()) / (d * (t - Rational::one())) + Rational::one()
    };
    let two = Rational::from_integer(2.into());
    if d == 1 {
        return f(&two).ceil().to_integer().to_u64().unwrap();
    }
    let (mut lo, mut hi) = (Rational::one(), two.clone());
    loop {
        let mid = (&lo + &hi) / &two;
        if pow_q(&mid, d) < two {
            lo = mid;
        } else {
            hi = mid;
        }
        if lo == Rational::one() {
            continue;
        }
        // f is decreasing in t, so f(hi) < f(2^(1/d)) < f(lo)
        let (a, b) = (f(&hi), f(&lo));
        if a.ceil() == b.ceil() && !a.is_integer() && !b.is_integer() {
            return a.ceil().to_integer().to_u64().unwrap();
        }
    }
}

pub fn theorem_constants(n: usize, d1: u32, d2: u32, delta: &Rational, d: u32) -> Result<TheoremConstants> {
    if n == 0 || d1 == 0 || d2 == 0 || d == 0 {
        return domain("n and all degrees must be positive");
    }
    if !delta.is_positive() || *delta >= Rational::one() {
        return domain(format!("delta = {delta} outside (0, 1)"));
    }
    let (nn, a, b) = (n as u64, d1 as u64, d2 as u64);
    // floor(2 d1 n / sqrt(delta)) = isqrt(floor(4 d1^2 n^2 / delta))
    let x = Rational::from_integer(BigInt::from(4 * a * a * nn * nn)) / delta;
    let m_main = x.floor().to_integer().magnitude().sqrt();
    let ms = m_spart(n, d);
    Ok(TheoremConstants {
        c_main: 2 * (nn * nn * a + nn * b),
        m_main: m_main.to_u64().unwrap(),
        c_combined: 6 * (a + b) * nn * nn,
        c_spart: 4 * nn * d as u64,
        m_spart: ms,
        m_spart_within_2n: ms <= 2 * nn,
        i_spart: i_spart(n, d, ms),
    })
}

#[derive(Clone, Debug)]
pub struct VeroneseBasis {
    pub monomials: Vec<MultiIndex>,
    pub elements: Vec<MultiPoly>,
    pub k: Vec<u32>,
    pub i_sum: u128,
    pub rank: usize,
}

/// B^i = x^i / x0^{k d} * F^k with k = floor(ord_{x0} x^i / d), over all monomials of degree m d.
pub fn veronese_basis(f: &MultiPoly, m: u32) -> Result<VeroneseBasis> {
    if f.is_zero() || !f.is_homogeneous() {
        return domain("veronese basis needs a nonzero homogeneous form");
    }
    let nv = f.nvars();
    let d = f.total_degree();
    if d == 0 {
        return domain("form of degree zero");
    }
    let mut x0d = MultiIndex::zero(nv);
    x0d.0[0] = d;
    if f.coefficient(&x0d).is_zero() {
        return domain("coefficient of x0^d vanishes");
    }
    let monos = monomials_of_degree(nv, m * d);
    let idx = index_of(&monos);
    let mut powers = vec![MultiPoly::one(nv)];
    for k in 1..=m as usize {
        let next = &powers[k - 1] * f;
        powers.push(next);
    }
    let mut ech = Echelon::new(monos.len());
    let (mut elements, mut ks) = (vec![], vec![]);
    for e in &monos {
        let k = e.0[0] / d;
        let mut rest = e.clone();
        rest.0[0] -= k * d;
        let b = powers[k as usize].mul_term(&rest, &Rational::one());
        ech.insert(integer_coords(&b, &idx, monos.len()));
        elements.push(b);
        ks.push(k);
    }
    Ok(VeroneseBasis {
        monomials: monos,
        i_sum: ks.iter().map(|&k| k as u128).sum(),
        elements,
        k: ks,
        rank: ech.rank(),
    })
}

/// A random homogeneous form of degree d in nv variables with coefficients in [-3, 3].
pub fn random_form(rng: &mut ChaCha8Rng, nv: usize, d: u32) -> MultiPoly {
    loop {
        let p = MultiPoly::from_terms(
            nv,
            monomials_of_degree(nv, d)
                .into_iter()
                .map(|e| (e, Rational::from_integer(rng.gen_range(-3i64..=3).into()))),
        );
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random coprime pair of forms, drawn by rejection.
pub fn random_coprime_forms(rng: &mut ChaCha8Rng, nv: usize, d1: u32, d2: u32) -> (MultiPoly, MultiPoly) {
    loop {
        let a = random_form(rng, nv, d1);
        let b = random_form(rng, nv, d2);
        if coprime(&a, &b).unwrap_or(false) {
            return (a, b);
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    pub cells: usize,
    pub formula_checks: usize,
    pub ord_checks: usize,
    pub mismatches: Vec<String>,
    pub ord_failures: Vec<String>,
}

/// Formula-versus-rank sweep over n in {1,2,3}, d1, d2 in {1,2,3}, l <= d1 + d2 + 3, with
/// `pairs` random coprime pairs per cell; also checks the ord-sum bounds on every quotient basis.
pub fn hilbert_sweep(seed: u64, pairs: usize) -> SweepReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = SweepReport::default();
    for n in 1..=3usize {
        for d1 in 1..=3u32 {
            for d2 in 1..=3u32 {
                rep.cells += 1;
                for _ in 0..pairs {
                    let (f1, f2) = random_coprime_forms(&mut rng, n + 1, d1, d2);
                    for l in 0..=d1 + d2 + 3 {
                        let basis = quotient_monomial_basis(&f1, &f2, l);
                        let want = dim_quotient_formula(n, l, d1, d2);
                        rep.formula_checks += 1;
                        if basis.len() as u128 != want {
                            rep.mismatches.push(format!(
                                "n={n} d1={d1} d2={d2} l={l}: rank {} vs formula {want} for ({f1}, {f2})",
                                basis.len()
                            ));
                        }
                        for i in 0..=n {
                            rep.ord_checks += 1;
                            if !ord_sum_check(&basis, i, d1, d2, l, n) {
                                let (s, p, q) = ord_sum_bounds(&basis, i, d1, d2, l, n);
                                rep.ord_failures.push(format!(
                                    "n={n} d1={d1} d2={d2} m={l} i={i}: sum {s}, bounds {p} <= {q}"
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::places::{int, rat};

    fn p(s: &str, n: usize) -> MultiPoly {
        MultiPoly::parse(s, n).unwrap()
    }

    #[test]
    fn multiindex_sums() {
        assert_eq!(multiindex_sum(1, 2), vec![3, 3]);
        assert_eq!(multiindex_sum(2, 1), vec![1, 1, 1]);
        assert_eq!(multiindex_sum(2, 3), vec![10, 10, 10]);
        assert_eq!(multiindex_sum_closed(2, 3), 10);
    }

    #[test]
    fn quotient_formula_examples() {
        assert_eq!(dim_quotient_formula(2, 2, 1, 1), 1);
        assert_eq!(dim_quotient_formula(2, 3, 1, 2), 2);
        assert_eq!(dim_quotient_formula(1, 5, 2, 3), 0);
        // x0, x1 in P^2 at degree 2: quotient spanned by x2^2
        let x0 = MultiPoly::var(3, 0);
        let x1 = MultiPoly::var(3, 1);
        assert_eq!(quotient_dim_bruteforce(&x0, &x1, 2), 1);
        let q = &x1.pow(2) + &MultiPoly::var(3, 2).pow(2);
        assert_eq!(quotient_dim_bruteforce(&x0, &q, 3), 2);
    }

    #[test]
    fn truncated_examples() {
        let t = truncated_ideal(&p("x1+1", 2), &p("x2", 2), 1).unwrap();
        assert_eq!((t.dim(), t.codim()), (2, 1));
        let t = truncated_ideal(&p("x1", 2), &p("x2", 2), 2).unwrap();
        assert_eq!(t.codim(), 1);
        let t = truncated_ideal(&p("x1", 2), &p("x1^2", 2), 2).unwrap();
        assert_eq!(t.codim(), 3);
        assert!(t.contains(&p("x1*x2 - 3*x1^2", 2)).unwrap());
        assert!(!t.contains(&p("x2^2", 2)).unwrap());
        assert!(truncated_ideal(&p("x1^2", 2), &p("x2", 2), 1).is_err());
    }

    #[test]
    fn greedy_examples() {
        let t = truncated_ideal(&p("x1+1", 2), &p("x2", 2), 1).unwrap();
        let u = TorusPoint::new(vec![int(2), int(3)]).unwrap();
        let b = greedy_monomial_basis(&t, &u, Place::Archimedean).unwrap();
        assert_eq!(b.monomials, vec![MultiIndex(vec![0, 0])]);
        let u = TorusPoint::new(vec![rat(1, 2), int(3)]).unwrap();
        let b = greedy_monomial_basis(&t, &u, Place::Archimedean).unwrap();
        assert_eq!(b.monomials, vec![MultiIndex(vec![1, 0])]);
        let rep = check_greedy_dominance(&t, &b).unwrap();
        assert_eq!(rep.checked, 2);
        assert!(rep.violations.is_empty());
    }

    #[test]
    fn ord_sum_examples() {
        let b = vec![MultiIndex(vec![0, 0, 2])];
        assert!(ord_sum_check(&b, 0, 1, 1, 2, 2));
        assert!(ord_sum_check(&b, 2, 1, 1, 2, 2));
        assert_eq!(ord_sum_bounds(&b, 2, 1, 1, 2, 2), (2, 2, 2));
        assert!(ord_sum_check(&[], 1, 2, 3, 4, 2));
    }

    #[test]
    fn constants() {
        let c = theorem_constants(2, 3, 2, &rat(1, 4), 1).unwrap();
        assert_eq!((c.c_main, c.c_combined), (32, 120));
        let c = theorem_constants(2, 1, 1, &rat(1, 4), 1).unwrap();
        assert_eq!(c.m_main, 8);
        assert_eq!(i_spart(1, 1, 3), 6);
        assert_eq!(c.m_spart, 2);
        assert!(theorem_constants(2, 1, 1, &int(1), 1).is_err());
        // d = 4, n = 1: t = 2^(1/4) gives 2.07..., so the ceiling is 3 > 2n
        let c = theorem_constants(1, 1, 1, &rat(1, 2), 4).unwrap();
        assert_eq!(c.m_spart, 3);
        assert!(!c.m_spart_within_2n);
    }

    #[test]
    fn veronese_examples() {
        let f = p("x1 + x2", 2);
        let v = veronese_basis(&f, 2).unwrap();
        assert_eq!(v.rank, 3);
        assert_eq!(v.i_sum, 3);
        let f = p("x1^2 + x2^2", 2);
        let v = veronese_basis(&f, 1).unwrap();
        assert_eq!((v.rank, v.i_sum), (3, 1));
        assert!(veronese_basis(&p("x1*x2", 2), 1).is_err());
    }
}
