//! Exact integer number theory: factorization, p-adic valuation, Möbius
//! function, divisors and prime enumeration.
//!
//! Everything is defined on arbitrary-precision naturals. Values that fit in
//! a machine word take a `u64` fast path; the results are identical.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision non-negative integer.
pub type Natural = BigUint;

/// Prime factorization with strictly ascending primes and positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    pairs: Vec<(Natural, u32)>,
}

impl Factorization {
    pub fn pairs(&self) -> &[(Natural, u32)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn product(&self) -> Natural {
        self.pairs
            .iter()
            .fold(Natural::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    /// Exponent of `p` in the factorization (zero when absent).
    pub fn exponent_of(&self, p: &Natural) -> u32 {
        self.pairs
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }

    pub fn moebius(&self) -> i8 {
        if self.pairs.iter().any(|(_, e)| *e > 1) {
            0
        } else if self.pairs.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All divisors, ascending.
    pub fn divisors(&self) -> Vec<Natural> {
        let mut divs = vec![Natural::one()];
        for (p, e) in &self.pairs {
            let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
            for d in &divs {
                let mut q = d.clone();
                next.push(q.clone());
                for _ in 0..*e {
                    q *= p;
                    next.push(q.clone());
                }
            }
            divs = next;
        }
        divs.sort();
        divs
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Deterministic primality by trial division.
pub fn is_prime(n: &Natural) -> bool {
    match n.to_u64() {
        Some(small) => is_prime_u64(small),
        None => {
            let f = factor_big(n.clone());
            f.len() == 1 && f[0].1 == 1
        }
    }
}

fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn factor_big(mut n: Natural) -> Vec<(Natural, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    loop {
        if let Some(small) = n.to_u64() {
            for (p, e) in factor_u64(small) {
                match out.last_mut() {
                    Some((q, f)) if *q == Natural::from(p) => *f += e,
                    _ => out.push((Natural::from(p), e)),
                }
            }
            return out;
        }
        let dd = Natural::from(d) * d;
        if dd > n {
            out.push((n, 1));
            return out;
        }
        let mut e = 0;
        loop {
            let (q, r) = n.div_rem(&Natural::from(d));
            if !r.is_zero() {
                break;
            }
            n = q;
            e += 1;
        }
        if e > 0 {
            out.push((Natural::from(d), e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
}

pub fn factorize(n: &Natural) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroArgument { op: "factorize" });
    }
    let pairs = match n.to_u64() {
        Some(small) => factor_u64(small)
            .into_iter()
            .map(|(p, e)| (Natural::from(p), e))
            .collect(),
        None => factor_big(n.clone()),
    };
    Ok(Factorization { pairs })
}

/// Exponent of `p` in `n` without validating that `p` is prime.
pub(crate) fn valuation(p: u64, n: &Natural) -> u32 {
    if let Some(small) = n.to_u64() {
        return valuation_u64(p, small);
    }
    let mut m = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = m.div_rem(&Natural::from(p));
        if !r.is_zero() {
            return e;
        }
        m = q;
        e += 1;
    }
}

#[inline]
pub(crate) fn valuation_u64(p: u64, mut n: u64) -> u32 {
    debug_assert!(n > 0 && p > 1);
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// `ord_p(n)`: the largest `e` with `p^e | n`.
pub fn ord(p: u64, n: &Natural) -> Result<u32> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(Natural::from(p)));
    }
    if n.is_zero() {
        return Err(Error::ZeroArgument { op: "ord" });
    }
    Ok(valuation(p, n))
}

pub fn moebius(n: &Natural) -> Result<i8> {
    Ok(factorize(n)?.moebius())
}

pub fn divisors(n: &Natural) -> Result<Vec<Natural>> {
    Ok(factorize(n)?.divisors())
}

/// All primes `<= bound`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    let Ok(limit) = usize::try_from(bound) else {
        panic!("prime bound {bound} exceeds addressable memory");
    };
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Divisors of a sequence index, ascending.
pub(crate) fn index_divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub(crate) fn index_moebius(n: usize) -> i8 {
    let f = factor_u64(n as u64);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}
