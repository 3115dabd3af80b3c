//! Integer helpers: primality, factorization, divisors, φ, σ and the
//! closed-form `gcd(p^i + 1, p^j - 1)`.

use serde::Serialize;

use crate::error::{LpError, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if m < 4 {
        return true;
    }
    if m % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= m {
        if m % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

pub fn divisors(m: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (prime, exp) in factorize(m) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..exp {
            pk *= prime;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// Euler's totient.
pub fn phi(m: u64) -> u64 {
    factorize(m)
        .into_iter()
        .fold(m, |acc, (prime, _)| acc / prime * (prime - 1))
}

/// Sum of divisors.
pub fn sigma(m: u64) -> u64 {
    divisors(m).into_iter().sum()
}

/// Everything the census needs to know about one integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NumberTheory {
    pub m: u64,
    pub phi: u64,
    pub sigma: u64,
    pub divisors: Vec<u64>,
    pub factorization: Vec<(u64, u32)>,
}

pub fn number_theory(m: u64) -> NumberTheory {
    assert!(m >= 1, "number_theory needs m >= 1");
    let factorization = factorize(m);
    let divisors = divisors(m);
    NumberTheory {
        m,
        phi: phi(m),
        sigma: divisors.iter().sum(),
        divisors,
        factorization,
    }
}

/// 2-adic valuation, `b > 0`.
fn v2(b: u64) -> u32 {
    b.trailing_zeros()
}

/// `gcd(p^i + 1, p^j - 1)` through the 2-adic case split: `p^gcd(i,j) + 1`
/// when `v(i) < v(j)`, otherwise 1 for `p = 2` and 2 for odd `p`.
pub fn gcd_power(p: u64, i: u64, j: u64) -> Result<u128> {
    if !is_prime(p) {
        return Err(LpError::NotPrime(p));
    }
    if i == 0 || j == 0 {
        return Err(LpError::GcdExponentZero);
    }
    if v2(i) < v2(j) {
        let g = u32::try_from(gcd(i, j)).map_err(|_| LpError::Overflow("gcd_power"))?;
        (p as u128)
            .checked_pow(g)
            .and_then(|v| v.checked_add(1))
            .ok_or(LpError::Overflow("gcd_power"))
    } else if p == 2 {
        Ok(1)
    } else {
        Ok(2)
    }
}

/// `p^e` as u128, erroring on overflow.
pub fn checked_pow(p: u64, e: u64) -> Result<u128> {
    let e = u32::try_from(e).map_err(|_| LpError::Overflow("power"))?;
    (p as u128).checked_pow(e).ok_or(LpError::Overflow("power"))
}

/// Modular exponentiation on u64 via u128 intermediates.
pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}
