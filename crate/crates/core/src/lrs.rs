//! Linear recurrences as generalized power sums sum_i p_i(n) alpha_i^n over Q.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::factor_biguint;
use crate::error::{domain, Error, Result};
use crate::heights::height;
use crate::linalg::solve_rational;
use crate::logreal::LogReal;
use crate::multipoly::{coprime, LaurentPoly, MultiPoly};
use crate::places::{parse_rational, valuation, PlaceSet};
use crate::{Rational, DEFAULT_PREC};

/// Univariate polynomial in the index n, little-endian coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffPoly(Vec<Rational>);

impl CoeffPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        CoeffPoly(c)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval(&self, n: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * n + c)
    }

    pub fn add(&self, o: &CoeffPoly) -> CoeffPoly {
        let len = self.0.len().max(o.0.len());
        let z = Rational::zero();
        Self::new((0..len).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect())
    }

    pub fn mul(&self, o: &CoeffPoly) -> CoeffPoly {
        if self.is_zero() || o.is_zero() {
            return CoeffPoly(vec![]);
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Rational) -> CoeffPoly {
        Self::new(self.0.iter().map(|x| x * c).collect())
    }

    /// p(a t + b) as a polynomial in t.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> CoeffPoly {
        let lin = CoeffPoly::new(vec![b.clone(), a.clone()]);
        self.0.iter().rev().fold(CoeffPoly(vec![]), |acc, c| acc.mul(&lin).add(&CoeffPoly::constant(c.clone())))
    }

    fn to_multipoly(&self, nvars: usize) -> MultiPoly {
        let x0 = MultiPoly::var(nvars, 0);
        self.0.iter().enumerate().fold(MultiPoly::zero(nvars), |acc, (k, c)| &acc + &x0.pow(k as u32).scale(c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSum {
    terms: Vec<(CoeffPoly, Rational)>,
}

fn canonical(it: impl IntoIterator<Item = (CoeffPoly, Rational)>) -> Vec<(CoeffPoly, Rational)> {
    let mut m: BTreeMap<Rational, CoeffPoly> = BTreeMap::new();
    for (p, r) in it {
        let e = m.entry(r).or_insert_with(|| CoeffPoly(vec![]));
        *e = e.add(&p);
    }
    m.into_iter().filter(|(_, p)| !p.is_zero()).map(|(r, p)| (p, r)).collect()
}

impl PowerSum {
    pub fn new(terms: Vec<(CoeffPoly, Rational)>) -> Result<Self> {
        if terms.iter().any(|(_, r)| r.is_zero()) {
            return domain("power sum root must be nonzero");
        }
        Ok(PowerSum { terms: canonical(terms) })
    }

    pub fn zero() -> Self {
        PowerSum { terms: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Self::geometric(c, Rational::one())
    }

    /// c * root^n.
    pub fn geometric(c: Rational, root: Rational) -> Self {
        assert!(!root.is_zero());
        PowerSum { terms: canonical([(CoeffPoly::constant(c), root)]) }
    }

    /// p(n) * root^n with little-endian coefficients.
    pub fn term(coeffs: Vec<Rational>, root: Rational) -> Self {
        assert!(!root.is_zero());
        PowerSum { terms: canonical([(CoeffPoly::new(coeffs), root)]) }
    }

    /// The sequence n.
    pub fn index() -> Self {
        Self::term(vec![Rational::zero(), Rational::one()], Rational::one())
    }

    pub fn terms(&self) -> &[(CoeffPoly, Rational)] {
        &self.terms
    }

    pub fn roots(&self) -> Vec<Rational> {
        self.terms.iter().map(|(_, r)| r.clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, n: u64) -> Rational {
        let nq = Rational::from_integer(n.into());
        self.terms
            .iter()
            .map(|(p, r)| p.eval(&nq) * num_traits::pow::Pow::pow(r, n))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Values at n = 0..=upto, using running powers.
    pub fn eval_range(&self, upto: u64) -> Vec<Rational> {
        let mut powers: Vec<Rational> = vec![Rational::one(); self.terms.len()];
        let mut out = Vec::with_capacity(upto as usize + 1);
        for n in 0..=upto {
            let nq = Rational::from_integer(n.into());
            let mut acc = Rational::zero();
            for (i, (p, r)) in self.terms.iter().enumerate() {
                acc += p.eval(&nq) * &powers[i];
                powers[i] *= r;
            }
            out.push(acc);
        }
        out
    }

    pub fn add(&self, o: &PowerSum) -> PowerSum {
        PowerSum { terms: canonical(self.terms.iter().chain(&o.terms).cloned()) }
    }

    pub fn scale(&self, c: &Rational) -> PowerSum {
        PowerSum { terms: canonical(self.terms.iter().map(|(p, r)| (p.scale(c), r.clone()))) }
    }

    pub fn neg(&self) -> PowerSum {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, o: &PowerSum) -> PowerSum {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &PowerSum) -> PowerSum {
        let mut out = vec![];
        for (p, a) in &self.terms {
            for (q, b) in &o.terms {
                out.push((p.mul(q), a * b));
            }
        }
        PowerSum { terms: canonical(out) }
    }

    /// t -> F(a t + b).
    pub fn compose_ap(&self, a: u64, b: u64) -> PowerSum {
        let (aq, bq) = (Rational::from_integer(a.into()), Rational::from_integer(b.into()));
        PowerSum {
            terms: canonical(self.terms.iter().map(|(p, r)| {
                (
                    p.compose_affine(&aq, &bq).scale(&num_traits::pow::Pow::pow(r, b)),
                    num_traits::pow::Pow::pow(r, a),
                )
            })),
        }
    }

    /// Over Q the only nontrivial root of unity is -1.
    pub fn is_degenerate(&self) -> bool {
        self.count_opposite_pairs() > 0
    }

    fn count_opposite_pairs(&self) -> usize {
        let roots: BTreeSet<Rational> = self.roots().into_iter().collect();
        roots.iter().filter(|r| r.is_positive() && roots.contains(&-(*r).clone())).count()
    }

    /// Power-sum form of a(n+k) = c_1 a(n+k-1) + ... + c_k a(n) with given a(0..k), when the
    /// characteristic polynomial splits over Q.
    pub fn from_recurrence(c: &[Rational], initial: &[Rational]) -> Result<PowerSum> {
        let k = c.len();
        if k == 0 || initial.len() != k {
            return domain("need k >= 1 recurrence coefficients and k initial values");
        }
        if c[k - 1].is_zero() {
            return domain("zero characteristic root (c_k = 0)");
        }
        // characteristic polynomial, little-endian: x^k - c1 x^{k-1} - ... - ck
        let mut chr: Vec<Rational> = (0..k).map(|i| -c[k - 1 - i].clone()).collect();
        chr.push(Rational::one());
        let den = chr.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let ints: Vec<BigInt> = chr.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
        let divisors = |n: &BigInt| -> Result<Vec<BigUint>> {
            let f = factor_biguint(n.magnitude()).ok_or_else(|| Error::Domain("coefficient too large to factor".into()))?;
            let mut ds = vec![BigUint::one()];
            for (p, e) in f {
                let cur = ds.clone();
                for d in cur {
                    let mut pp = BigUint::from(p);
                    for _ in 0..e {
                        ds.push(&d * &pp);
                        pp *= p;
                    }
                }
            }
            Ok(ds)
        };
        let mut roots: Vec<(Rational, usize)> = vec![];
        let mut poly = chr.clone();
        for a in divisors(&ints[0])? {
            for b in divisors(&ints[k])? {
                for s in [1i32, -1] {
                    let r = Rational::new(BigInt::from(a.clone()) * s, BigInt::from(b.clone()));
                    if roots.iter().any(|(x, _)| *x == r) {
                        continue;
                    }
                    let mut mult = 0;
                    while poly.len() > 1 {
                        // synthetic division by (x - r)
                        let mut q = vec![Rational::zero(); poly.len() - 1];
                        let mut carry = Rational::zero();
                        for i in (0..poly.len()).rev() {
                            let v = &poly[i] + &carry * &r;
                            if i == 0 {
                                carry = v;
                            } else {
                                q[i - 1] = v.clone();
                                carry = v;
                            }
                        }
                        if !carry.is_zero() {
                            break;
                        }
                        poly = q;
                        mult += 1;
                    }
                    if mult > 0 {
                        roots.push((r, mult));
                    }
                }
            }
        }
        let total: usize = roots.iter().map(|(_, m)| m).sum();
        if total < k {
            return domain("characteristic polynomial does not split over Q");
        }
        let cols: Vec<(usize, Rational)> =
            roots.iter().flat_map(|(r, m)| (0..*m).map(move |j| (j, r.clone()))).collect();
        let a: Vec<Vec<Rational>> = (0..k)
            .map(|n| {
                cols.iter()
                    .map(|(j, r)| {
                        let nj = if *j == 0 { Rational::one() } else { Rational::from_integer(BigInt::from(n).pow(*j as u32)) };
                        nj * num_traits::pow::Pow::pow(r, n as u64)
                    })
                    .collect()
            })
            .collect();
        let sol = solve_rational(a, initial.to_vec()).ok_or_else(|| Error::Domain("singular initial system".into()))?;
        let mut terms = vec![];
        let mut at = 0;
        for (r, m) in &roots {
            terms.push((CoeffPoly::new(sol[at..at + m].to_vec()), r.clone()));
            at += m;
        }
        PowerSum::new(terms)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: Vec<String>,
    root: String,
}

#[derive(Serialize, Deserialize)]
struct PowerSumJson {
    terms: Vec<TermJson>,
}

impl Serialize for PowerSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PowerSumJson {
            terms: self
                .terms
                .iter()
                .map(|(p, r)| TermJson { coeff: p.0.iter().map(|c| c.to_string()).collect(), root: r.to_string() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PowerSum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<PowerSum, D::Error> {
        use serde::de::Error as _;
        let j = PowerSumJson::deserialize(d)?;
        let mut terms = vec![];
        for t in j.terms {
            let c: Vec<Rational> = t.coeff.iter().map(|x| parse_rational(x)).collect::<Result<_>>().map_err(D::Error::custom)?;
            let r = parse_rational(&t.root).map_err(D::Error::custom)?;
            terms.push((CoeffPoly::new(c), r));
        }
        PowerSum::new(terms).map_err(D::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroStructure {
    pub zeros: Vec<u64>,
    /// (modulus, residue) classes on which F vanishes identically.
    pub progressions: Vec<(u64, u64)>,
    pub sporadic: Vec<u64>,
}

/// Zeros of F in [0, N], split into identically vanishing residue classes and the rest.
pub fn zero_scan(f: &PowerSum, n: u64) -> ZeroStructure {
    let vals = f.eval_range(n);
    let zeros: Vec<u64> = (0..=n).filter(|&i| vals[i as usize].is_zero()).collect();
    let max_mod = 2 * f.count_opposite_pairs().max(1) as u64;
    let mut progressions: Vec<(u64, u64)> = vec![];
    for m in 1..=max_mod {
        for r in 0..m {
            if progressions.iter().any(|&(m0, r0)| m % m0 == 0 && r % m0 == r0) {
                continue;
            }
            if f.compose_ap(m, r).is_zero() {
                progressions.push((m, r));
            }
        }
    }
    let sporadic =
        zeros.iter().copied().filter(|z| !progressions.iter().any(|&(m, r)| z % m == r)).collect();
    ZeroStructure { zeros, progressions, sporadic }
}

/// The multiplicative group generated by a list of nonzero rationals.
#[derive(Clone, Debug)]
pub struct RootGroup {
    pub roots: Vec<Rational>,
    /// Supporting primes, one lattice column each.
    pub primes: Vec<u64>,
    /// Hermite normal form rows: exponent vectors of the generators.
    pub lattice: Vec<Vec<BigInt>>,
    pub generators: Vec<Rational>,
    pub rank: usize,
    /// True iff -1 lies in the group.
    pub torsion: bool,
    /// root_k = sign * prod_j generators[j]^e_j.
    pub expressions: Vec<(i8, Vec<BigInt>)>,
}

fn row_op(h: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let s = h[src].clone();
    for (x, y) in h[dst].iter_mut().zip(&s) {
        *x -= q * y;
    }
}

pub fn root_group(roots: &[Rational]) -> Result<RootGroup> {
    if roots.iter().any(|r| r.is_zero()) {
        return domain("roots must be nonzero");
    }
    let mut primes = BTreeSet::new();
    for r in roots {
        for part in [r.numer().magnitude(), r.denom().magnitude()] {
            let f = factor_biguint(part).ok_or_else(|| Error::Domain("root too large to factor".into()))?;
            primes.extend(f.into_iter().map(|(p, _)| p));
        }
    }
    let primes: Vec<u64> = primes.into_iter().collect();
    let k = roots.len();
    let mut h: Vec<Vec<BigInt>> =
        roots.iter().map(|r| primes.iter().map(|&p| BigInt::from(valuation(r, p).unwrap())).collect()).collect();
    let mut u: Vec<Vec<BigInt>> =
        (0..k).map(|i| (0..k).map(|j| BigInt::from((i == j) as i32)).collect()).collect();
    let mut row = 0;
    for c in 0..primes.len() {
        if row == k {
            break;
        }
        loop {
            let best = (row..k).filter(|&i| !h[i][c].is_zero()).min_by_key(|&i| h[i][c].magnitude().clone());
            let Some(b) = best else { break };
            h.swap(row, b);
            u.swap(row, b);
            let mut done = true;
            for i in row + 1..k {
                if !h[i][c].is_zero() {
                    let q = &h[i][c] / &h[row][c];
                    row_op(&mut h, i, row, &q);
                    row_op(&mut u, i, row, &q);
                    if !h[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h.get(row).is_none_or(|r| r[c].is_zero()) {
            continue;
        }
        if h[row][c].is_negative() {
            for x in h[row].iter_mut().chain(u[row].iter_mut()) {
                *x = -&*x;
            }
        }
        for i in 0..row {
            let q = h[i][c].div_floor(&h[row][c]);
            row_op(&mut h, i, row, &q);
            row_op(&mut u, i, row, &q);
        }
        row += 1;
    }
    let rank = row;
    let negative: Vec<bool> = roots.iter().map(|r| r.is_negative()).collect();
    let sign_of = |coeffs: &[BigInt]| -> bool {
        coeffs.iter().zip(&negative).filter(|(e, neg)| **neg && e.is_odd()).count() % 2 == 1
    };
    let torsion = (rank..k).any(|j| sign_of(&u[j]));
    let generators: Vec<Rational> = (0..rank)
        .map(|j| {
            let mut g = Rational::one();
            for (c, &p) in primes.iter().enumerate() {
                let e = h[j][c].to_i32().expect("exponent fits");
                g *= num_traits::pow::Pow::pow(&Rational::from_integer(p.into()), e);
            }
            if sign_of(&u[j]) {
                -g
            } else {
                g
            }
        })
        .collect();
    let lattice: Vec<Vec<BigInt>> = h[..rank].to_vec();
    let mut grp = RootGroup { roots: roots.to_vec(), primes, lattice, generators, rank, torsion, expressions: vec![] };
    grp.expressions = roots.iter().map(|r| grp.express(r).expect("roots lie in their own group")).collect();
    Ok(grp)
}

impl RootGroup {
    /// (sign, exponents) with q = sign * prod g_j^e_j, if q lies in the group.
    pub fn express(&self, q: &Rational) -> Option<(i8, Vec<BigInt>)> {
        if q.is_zero() {
            return None;
        }
        let (mut n, mut d) = (q.numer().magnitude().clone(), q.denom().magnitude().clone());
        let mut a: Vec<BigInt> = vec![];
        for &p in &self.primes {
            let e = crate::arith::strip_factor(&mut n, p) as i64 - crate::arith::strip_factor(&mut d, p) as i64;
            a.push(BigInt::from(e));
        }
        if !n.is_one() || !d.is_one() {
            return None;
        }
        let mut e = vec![];
        for row in &self.lattice {
            let c = row.iter().position(|x| !x.is_zero()).unwrap();
            let (qt, rem) = a[c].div_rem(&row[c]);
            if !rem.is_zero() {
                return None;
            }
            for (x, y) in a.iter_mut().zip(row) {
                *x -= &qt * y;
            }
            e.push(qt);
        }
        if a.iter().any(|x| !x.is_zero()) {
            return None;
        }
        let v = self.monomial(&e);
        let sign: i8 = if v == *q { 1 } else { -1 };
        if sign < 0 && !self.torsion {
            return None;
        }
        Some((sign, e))
    }

    /// prod g_j^e_j.
    pub fn monomial(&self, e: &[BigInt]) -> Rational {
        self.generators.iter().zip(e).fold(Rational::one(), |acc, (g, k)| {
            acc * num_traits::pow::Pow::pow(g, k.to_i32().expect("exponent fits"))
        })
    }
}

pub fn multiplicative_independence(rf: &[Rational], rg: &[Rational]) -> Result<bool> {
    let all: Vec<Rational> = rf.iter().chain(rg).cloned().collect();
    Ok(root_group(rf)?.rank + root_group(rg)?.rank == root_group(&all)?.rank)
}

/// f in Q[x0, x1^{+-1}, ..., xr^{+-1}] with F(n) = f(n, g_1^n, ..., g_r^n).
pub fn to_laurent(f: &PowerSum, g: &RootGroup) -> Result<LaurentPoly> {
    if g.torsion {
        return Err(Error::Precondition("root group has torsion; split residue classes first".into()));
    }
    let nv = g.rank + 1;
    let mut out = LaurentPoly::zero(nv);
    for (p, r) in &f.terms {
        let (_, e) = g.express(r).ok_or_else(|| Error::Domain(format!("root {r} not in the group")))?;
        let mut mono = vec![0i64];
        mono.extend(e.iter().map(|x| x.to_i64().expect("exponent fits")));
        let lp = LaurentPoly::from_poly(&p.to_multipoly(nv)).mul_monomial(&mono);
        out = &out + &lp;
    }
    for n in 0..=5u64 {
        let mut pt = vec![Rational::from_integer(n.into())];
        pt.extend(g.generators.iter().map(|x| num_traits::pow::Pow::pow(x, n)));
        if out.eval(&pt)? != f.eval(n) {
            return Err(Error::Domain("Laurent image failed its evaluation check".into()));
        }
    }
    Ok(out)
}

/// Strips the largest monomial in the unit variables x1..xr (x0 is the index and is not a unit).
fn strip_units(l: &LaurentPoly) -> Result<MultiPoly> {
    let (mut mono, _) = l.normalize()?;
    mono[0] = 0;
    let shifted = l.mul_monomial(&mono.iter().map(|x| -x).collect::<Vec<_>>());
    shifted.to_poly().ok_or_else(|| Error::Domain("unexpected negative exponent".into()))
}

/// Coprimality of the associated Laurent polynomials over the joint root group. With torsion
/// present, `split` checks the even and odd index classes separately.
pub fn lrs_coprime(f: &PowerSum, g: &PowerSum, split: bool) -> Result<bool> {
    if f.is_zero() || g.is_zero() {
        return domain("coprimality with the zero sequence");
    }
    let roots: Vec<Rational> = f.roots().into_iter().chain(g.roots()).collect();
    let grp = root_group(&roots)?;
    if grp.torsion {
        if !split {
            return Err(Error::Precondition("root group has torsion; enable the residue split".into()));
        }
        for r in 0..2 {
            if !lrs_coprime(&f.compose_ap(2, r), &g.compose_ap(2, r), false)? {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let f0 = strip_units(&to_laurent(f, &grp)?)?;
    let g0 = strip_units(&to_laurent(g, &grp)?)?;
    coprime(&f0, &g0)
}

/// Places where every root of both sequences has absolute value < 1.
pub fn compute_s0(rf: &[Rational], rg: &[Rational]) -> Result<PlaceSet> {
    let all: Vec<&Rational> = rf.iter().chain(rg).collect();
    if all.iter().any(|r| r.is_zero()) {
        return domain("roots must be nonzero");
    }
    if all.is_empty() {
        return Ok(PlaceSet::empty());
    }
    let arch = all.iter().all(|r| r.abs() < Rational::one());
    let smallest = all.iter().map(|r| r.numer().magnitude()).min().unwrap();
    let cands = factor_biguint(smallest).ok_or_else(|| Error::Domain("root too large to factor".into()))?;
    let primes = cands
        .into_iter()
        .map(|(p, _)| p)
        .filter(|&p| all.iter().all(|r| valuation(r, p).unwrap() > 0));
    PlaceSet::new(arch, primes)
}

/// h(prod u_j^{i_j}).
pub fn monomial_height(u: &[Rational], i: &[i64]) -> Result<LogReal> {
    if u.len() != i.len() || u.iter().any(|x| x.is_zero()) {
        return domain("generators and exponents must match and be nonzero");
    }
    let v = u.iter().zip(i).fold(Rational::one(), |a, (g, &k)| a * num_traits::pow::Pow::pow(g, k as i32));
    Ok(height(&v))
}

/// min over nonzero i with max|i_j| <= bound of h(u^i) / max|i_j|, with a minimizer.
pub fn empirical_c(u: &[Rational], bound: i64) -> Result<(LogReal, Vec<i64>)> {
    if u.is_empty() || bound < 1 {
        return domain("need generators and a positive bound");
    }
    let r = u.len();
    let mut best: Option<(LogReal, Vec<i64>)> = None;
    let mut e = vec![-bound; r];
    loop {
        let m = e.iter().map(|x| x.abs()).max().unwrap();
        if m > 0 {
            let v = monomial_height(u, &e)?.scale(&Rational::new(1.into(), m.into()));
            if best.as_ref().is_none_or(|(b, _)| v.cmp_logreal(b, DEFAULT_PREC).is_lt()) {
                best = Some((v, e.clone()));
            }
        }
        let mut i = 0;
        loop {
            if i == r {
                return Ok(best.unwrap());
            }
            e[i] += 1;
            if e[i] <= bound {
                break;
            }
            e[i] = -bound;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::places::{int, rat};

    fn geo(c: i64, r: i64) -> PowerSum {
        PowerSum::geometric(int(c), int(r))
    }

    #[test]
    fn example_values() {
        let f = PowerSum::index().mul(&geo(1, 2)).add(&geo(1, 1));
        let g = geo(1, 2).add(&geo(1, 1));
        assert_eq!(f.eval(4), int(65));
        assert_eq!(g.eval(6), int(65));
        assert_eq!(PowerSum::zero().eval(9), int(0));
        assert_eq!(f.eval_range(10), (0..=10).map(|n| f.eval(n)).collect::<Vec<_>>());
    }

    #[test]
    fn ring_ops() {
        assert_eq!(geo(1, 2).mul(&geo(1, 3)), geo(1, 6));
        assert!(geo(1, 2).add(&geo(-1, 2)).is_zero());
        let n2 = PowerSum::index().mul(&geo(1, 2));
        assert_eq!(n2.mul(&geo(1, 2)), PowerSum::index().mul(&geo(1, 4)));
    }

    #[test]
    fn arithmetic_progressions() {
        assert_eq!(geo(1, 2).compose_ap(2, 1), geo(2, 4));
        let f = PowerSum::index().mul(&geo(1, 2));
        let h = f.compose_ap(2, 1);
        assert_eq!(h, PowerSum::term(vec![int(2), int(4)], int(4)));
        for t in 0..5 {
            assert_eq!(h.eval(t), f.eval(2 * t + 1));
        }
        assert_eq!(f.compose_ap(1, 0), f);
    }

    #[test]
    fn degeneracy() {
        assert!(geo(1, 2).add(&geo(1, -2)).is_degenerate());
        assert!(!geo(1, 2).add(&geo(1, 3)).is_degenerate());
        assert!(!PowerSum::term(vec![int(0), int(0), int(1)], int(5)).is_degenerate());
    }

    #[test]
    fn zero_structure() {
        let z = zero_scan(&geo(1, 2).add(&geo(1, -2)), 20);
        assert_eq!(z.progressions, vec![(2, 1)]);
        assert!(z.sporadic.is_empty());
        assert_eq!(z.zeros, (0..=20).filter(|n| n % 2 == 1).collect::<Vec<_>>());
        let z = zero_scan(&geo(1, 2).add(&geo(-4, 1)), 20);
        assert_eq!((z.zeros.clone(), z.progressions.clone(), z.sporadic.clone()), (vec![2], vec![], vec![2]));
        assert!(zero_scan(&geo(1, 2).add(&geo(1, 3)), 50).zeros.is_empty());
    }

    #[test]
    fn root_groups() {
        let g = root_group(&[int(4), int(8)]).unwrap();
        assert_eq!((g.generators.clone(), g.rank, g.torsion), (vec![int(2)], 1, false));
        assert_eq!(root_group(&[int(2), int(3)]).unwrap().rank, 2);
        let g = root_group(&[int(-2), int(4)]).unwrap();
        assert_eq!((g.rank, g.torsion), (1, false));
        let g = root_group(&[int(-2), int(2)]).unwrap();
        assert_eq!((g.rank, g.torsion), (1, true));
        let g = root_group(&[rat(-6, 5), rat(9, 25), int(-1), rat(2, 7)]).unwrap();
        for (r, (s, e)) in g.roots.iter().zip(&g.expressions) {
            assert_eq!(g.monomial(e) * int(*s as i64), *r);
        }
        assert!(g.torsion);
    }

    #[test]
    fn independence() {
        assert!(multiplicative_independence(&[int(2)], &[int(3)]).unwrap());
        assert!(!multiplicative_independence(&[int(2), int(3)], &[int(6)]).unwrap());
        assert!(!multiplicative_independence(&[int(2)], &[rat(1, 2)]).unwrap());
    }

    #[test]
    fn laurent_images() {
        let f = PowerSum::index().mul(&geo(1, 2)).add(&geo(1, 1));
        let g = root_group(&[int(2)]).unwrap();
        assert_eq!(to_laurent(&f, &g).unwrap().to_string(), "x1*x2 + 1");
        let f = geo(1, 2).add(&PowerSum::geometric(int(1), rat(1, 2)));
        assert_eq!(to_laurent(&f, &g).unwrap().to_string(), "x2 + x2^-1");
        let g6 = root_group(&[int(2), int(3)]).unwrap();
        assert_eq!(to_laurent(&geo(1, 6), &g6).unwrap().to_string(), "x2*x3");
        assert!(to_laurent(&geo(1, 5), &g6).is_err());
    }

    #[test]
    fn lrs_coprimality() {
        let one = geo(1, 1);
        let a = geo(1, 2).sub(&one);
        let b = geo(1, 3).sub(&one);
        assert!(lrs_coprime(&a, &b, false).unwrap());
        let f = a.mul(&geo(1, 3).add(&one));
        let g = a.mul(&geo(1, 5).add(&one));
        assert!(!lrs_coprime(&f, &g, false).unwrap());
        let c = PowerSum::index().mul(&geo(1, 2)).add(&one);
        assert!(lrs_coprime(&c, &geo(1, 2).add(&one), false).unwrap());
        // the index is not a unit: n 2^n and n 3^n share the factor n
        let n2 = PowerSum::index().mul(&geo(1, 2));
        let n3 = PowerSum::index().mul(&geo(1, 3));
        assert!(!lrs_coprime(&n2, &n3, false).unwrap());
        let t = geo(1, -2).sub(&one);
        assert!(lrs_coprime(&t, &geo(1, 2).add(&one), false).is_err());
        assert!(lrs_coprime(&t, &geo(1, 3).add(&one), true).is_ok());
    }

    #[test]
    fn s0_sets() {
        assert_eq!(compute_s0(&[int(2)], &[int(3)]).unwrap(), PlaceSet::empty());
        assert_eq!(compute_s0(&[rat(1, 2)], &[rat(1, 3)]).unwrap(), PlaceSet::new(true, []).unwrap());
        assert_eq!(compute_s0(&[rat(2, 5), rat(4, 5)], &[rat(3, 5)]).unwrap(), PlaceSet::new(true, []).unwrap());
        assert_eq!(compute_s0(&[int(6), int(10)], &[int(2)]).unwrap(), PlaceSet::new(false, [2]).unwrap());
    }

    #[test]
    fn monomial_heights() {
        let l = |p| LogReal::log_prime(p);
        assert_eq!(monomial_height(&[int(2)], &[5]).unwrap(), l(2).scale_int(5));
        assert_eq!(monomial_height(&[int(2), int(3)], &[1, -1]).unwrap(), l(3));
        let (c, _) = empirical_c(&[int(2), int(3)], 3).unwrap();
        assert_eq!(c.sign(64), std::cmp::Ordering::Greater);
    }

    #[test]
    fn recurrence_conversion() {
        // Fibonacci-like with rational roots: a(n+2) = 5 a(n+1) - 6 a(n), a0 = 2, a1 = 5 -> 2^n + 3^n
        let f = PowerSum::from_recurrence(&[int(5), int(-6)], &[int(2), int(5)]).unwrap();
        assert_eq!(f, geo(1, 2).add(&geo(1, 3)));
        // repeated root: a(n+2) = 4 a(n+1) - 4 a(n), a0 = 0, a1 = 2 -> n 2^n
        let f = PowerSum::from_recurrence(&[int(4), int(-4)], &[int(0), int(2)]).unwrap();
        assert_eq!(f, PowerSum::index().mul(&geo(1, 2)));
        assert!(PowerSum::from_recurrence(&[int(1), int(1)], &[int(0), int(1)]).is_err());
    }

    #[test]
    fn json_schema() {
        let f = PowerSum::term(vec![int(1), int(2)], rat(3, 2));
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"terms":[{"coeff":["1","2"],"root":"3/2"}]}"#);
        let back: PowerSum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<PowerSum>(r#"{"terms":[{"coeff":["1"],"root":"0"}]}"#).is_err());
    }
}
