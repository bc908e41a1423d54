//! Fraction-free row echelon forms over Z (equivalently Q, rows kept primitive).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return;
    }
    let lead_neg = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x = &*x / &g;
        if lead_neg {
            *x = -&*x;
        }
    }
}

/// v <- a*v - b*row, with a, b chosen to cancel column p.
fn eliminate(v: &mut [BigInt], row: &[BigInt], p: usize) {
    if v[p].is_zero() {
        return;
    }
    let g = row[p].gcd(&v[p]);
    let a = &row[p] / &g;
    let b = &v[p] / &g;
    for (x, r) in v.iter_mut().zip(row) {
        if r.is_zero() {
            *x *= &a;
        } else {
            *x = &*x * &a - &b * r;
        }
    }
    make_primitive(v);
}

/// Semi-echelon basis of a row space: each row's pivot column is zero in every row with a
/// larger pivot.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: vec![] }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &(usize, Vec<BigInt>)> {
        self.rows.iter()
    }

    pub fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ncols);
        for (p, row) in &self.rows {
            eliminate(&mut v, row, *p);
        }
        v
    }

    /// Adds v to the span; returns false if it was already in it.
    pub fn insert(&mut self, v: Vec<BigInt>) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        make_primitive(&mut r);
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, r));
        true
    }

    pub fn contains(&self, v: Vec<BigInt>) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Fully reduced form: every pivot column is zero outside its own row.
    pub fn into_reduced(mut self) -> Echelon {
        for i in (0..self.rows.len()).rev() {
            let (p, pivot_row) = self.rows[i].clone();
            for j in 0..i {
                eliminate(&mut self.rows[j].1, &pivot_row, p);
            }
        }
        self
    }
}

pub fn unit_vector(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::from(1);
    v
}

/// Solves the square system A x = b over Q; None if A is singular.
pub fn solve_rational(mut a: Vec<Vec<crate::Rational>>, mut b: Vec<crate::Rational>) -> Option<Vec<crate::Rational>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        b.swap(c, p);
        let inv = a[c][c].recip();
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = &a[r][c] * &inv;
                for k in c..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                }
                let t = &f * &b[c];
                b[r] -= t;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new(3);
        assert!(e.insert(row(&[2, 4, 6])));
        assert!(!e.insert(row(&[1, 2, 3])));
        assert!(e.insert(row(&[0, 1, 1])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(row(&[1, 3, 4])));
        assert!(!e.contains(row(&[0, 0, 1])));
    }

    #[test]
    fn reduced_form_clears_pivots() {
        let mut e = Echelon::new(3);
        e.insert(row(&[0, 1, 1]));
        e.insert(row(&[1, 1, 0]));
        let r = e.into_reduced();
        let pivots: Vec<usize> = r.rows().map(|(p, _)| *p).collect();
        for (_, v) in r.rows() {
            let nz = pivots.iter().filter(|&&p| !v[p].is_zero()).count();
            assert_eq!(nz, 1);
        }
    }
}
