//! Integer plumbing: primality, factorization, coprime bases, binomials.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn rho(n: u64) -> u64 {
    // Brent's variant; n is odd, composite, and not a prime power of a small prime.
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        while g == 1 {
            x = f(x);
            y = f(f(y));
            g = x.abs_diff(y).gcd(&n);
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

/// Prime factorization of a u64 as sorted (prime, exponent) pairs; 0 and 1 give [].
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    let mut out = std::collections::BTreeMap::new();
    let mut stack = vec![];
    let mut m = n;
    if m == 0 {
        return vec![];
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        while m.is_multiple_of(p) {
            *out.entry(p).or_insert(0u32) += 1;
            m /= p;
        }
    }
    if m > 1 {
        stack.push(m);
    }
    while let Some(x) = stack.pop() {
        if is_prime_u64(x) {
            *out.entry(x).or_insert(0) += 1;
        } else {
            let d = rho(x);
            stack.push(d);
            stack.push(x / d);
        }
    }
    out.into_iter().collect()
}

pub fn small_primes(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut sieve = vec![true; limit + 1];
    let mut out = vec![];
    for i in 2..=limit {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

fn trial_primes() -> &'static [u64] {
    static P: std::sync::OnceLock<Vec<u64>> = std::sync::OnceLock::new();
    P.get_or_init(|| small_primes(1000))
}

/// Exponent of p in n (n > 0), dividing it out.
pub fn strip_factor(n: &mut BigUint, p: u64) -> u32 {
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&BigUint::from(p));
        if !r.is_zero() {
            return e;
        }
        *n = q;
        e += 1;
    }
}

/// Splits n > 0 into small-prime factors plus a cofactor that is 1, a prime below 2^64
/// (fully factored when it fits in u64), or a large number left unfactored.
pub fn partial_factor(n: &BigUint) -> (Vec<(BigUint, u32)>, BigUint) {
    let mut m = n.clone();
    let mut out = vec![];
    if m.is_zero() {
        return (out, m);
    }
    for &p in trial_primes() {
        if m.is_one() {
            break;
        }
        if let Some(v) = m.to_u64() {
            if v < p * p {
                break;
            }
        }
        let e = strip_factor(&mut m, p);
        if e > 0 {
            out.push((BigUint::from(p), e));
        }
    }
    if let Some(v) = m.to_u64() {
        for (p, e) in factor_u64(v) {
            out.push((BigUint::from(p), e));
        }
        out.sort();
        return (out, BigUint::one());
    }
    (out, m)
}

/// Full factorization into u64 primes; None if some prime factor exceeds the u64 range.
pub fn factor_biguint(n: &BigUint) -> Option<Vec<(u64, u32)>> {
    let (parts, rest) = partial_factor(n);
    if !rest.is_one() {
        return None;
    }
    Some(parts.into_iter().map(|(p, e)| (p.to_u64().unwrap(), e)).collect())
}

/// Refines a multiset of integers > 1 into a pairwise coprime base such that every
/// input is a product of powers of base elements. Output sorted.
pub fn coprime_base(items: &[BigUint]) -> Vec<BigUint> {
    let mut base: Vec<BigUint> = vec![];
    let mut work: Vec<BigUint> = items.iter().filter(|x| **x > BigUint::one()).cloned().collect();
    while let Some(x) = work.pop() {
        if x.is_one() {
            continue;
        }
        let mut hit = None;
        for (i, b) in base.iter().enumerate() {
            if *b == x {
                hit = Some((i, None));
                break;
            }
            let g = b.gcd(&x);
            if !g.is_one() {
                hit = Some((i, Some(g)));
                break;
            }
        }
        match hit {
            None => base.push(x),
            Some((_, None)) => {}
            Some((i, Some(g))) => {
                let b = base.swap_remove(i);
                work.push(&b / &g);
                work.push(&x / &g);
                work.push(g);
            }
        }
    }
    base.sort();
    base
}

/// Exponent vector of n over a coprime base; None if n has a factor outside the base.
pub fn express_over_base(n: &BigUint, base: &[BigUint]) -> Option<Vec<u32>> {
    let mut m = n.clone();
    let mut out = vec![0u32; base.len()];
    for (i, b) in base.iter().enumerate() {
        loop {
            let (q, r) = m.div_rem(b);
            if !r.is_zero() {
                break;
            }
            m = q;
            out[i] += 1;
        }
    }
    if m.is_one() {
        Some(out)
    } else {
        None
    }
}

/// C(top, k) with the convention C(top, k) = 0 for top < k (including negative top).
pub fn binom(top: i64, k: u32) -> u128 {
    if top < k as i64 {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k as u128 {
        r = r * (top as u128 - i) / (i + 1);
    }
    r
}

/// Exact floor of the square root.
pub fn isqrt(n: &BigUint) -> BigUint {
    n.sqrt()
}
