//! The number Λ(n, q) of inequivalent LP linear sets on PG(1, q^n).
//!
//! [`lambda_closed`] evaluates the divisor-sum formula exactly; the orbit
//! oracle counts orbits of `x ↦ x^(±p^k)` on norm classes directly, and the
//! brute-force oracle partitions the actual point sets under PΓL(2, q^n).

mod bounds;
mod oracle;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{LpError, Result};
use crate::gf::numtheory::{divisors, factorize, is_prime, phi, sigma};

pub use bounds::{check_bounds, lambda_bounds, BoundShape, BoundsReport, Interval, Side};
pub use oracle::{
    f_size_enumerated, k_size_enumerated, lambda_brute_force, lambda_orbit_oracle, DEFAULT_ORBIT_CEILING,
    ENUMERATION_CEILING,
};

pub(crate) fn ser_int<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

pub(crate) fn ser_ratio<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_integer() {
        ser_int(v.numer(), s)
    } else {
        s.serialize_str(&v.to_string())
    }
}

fn ser_opt_int<S: Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => ser_int(x, s),
        None => s.serialize_none(),
    }
}

fn big_pow(p: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

fn distinct_primes(m: u64) -> Vec<u64> {
    factorize(m).into_iter().map(|(prime, _)| prime).collect()
}

/// `Σ_{S ⊆ primes} (-1)^|S| p^(m / (c·Π S))`.
fn inclusion_exclusion(p: u64, m: u64, c: u64, primes: &[u64]) -> BigInt {
    let mut total = BigInt::zero();
    for mask in 0u32..(1 << primes.len()) {
        let prod: u64 = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &x)| x)
            .product();
        let term = big_pow(p, m / (c * prod));
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `|F(r)|`: elements of F_{p^r} in no proper subfield.
pub fn f_size(p: u64, r: u32) -> BigInt {
    let r = r as u64;
    inclusion_exclusion(p, r, 1, &distinct_primes(r))
}

/// `|K(r)|`: elements `x ∈ F(r)` with `x^(p^k + 1) = 1` for some `0 <= k < r`.
pub fn k_size(p: u64, r: u32) -> BigInt {
    let odd_p = p % 2 == 1;
    let r = r as u64;
    if r == 1 {
        return BigInt::from(if odd_p { 2 } else { 1 });
    }
    if r % 2 == 1 {
        return BigInt::zero();
    }
    let primes = distinct_primes(r);
    if primes.len() == 1 {
        big_pow(p, r / 2) - if odd_p { 1 } else { 0 }
    } else {
        inclusion_exclusion(p, r, 2, &primes[1..])
    }
}

/// `ε`: `(p-1)/2` for odd `p` and `n`, `(p-3)/2` for odd `p` and even `n`,
/// 0 for `p = 2`.
pub fn epsilon(p: u64, n: u32) -> BigInt {
    if p == 2 {
        BigInt::zero()
    } else if n % 2 == 1 {
        BigInt::from((p - 1) / 2)
    } else {
        BigInt::from((p - 3) / 2)
    }
}

/// `σ(r) / (r ln ln r)` for `r >= 3`.
pub fn gronwall_ratio(r: u64) -> Result<f64> {
    if r < 3 {
        return Err(LpError::Precondition("the Gronwall ratio needs r >= 3"));
    }
    let r_f = r as f64;
    Ok(sigma(r) as f64 / (r_f * r_f.ln().ln()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TermKind {
    /// `(|F| + |K|) / 2r'` over `r' | r`, `r' > 1`.
    FPlusK,
    /// `(|F| - |K|) / 2r'` over `r' | 2r`, `r' ∤ r` (even `n` only).
    FMinusK,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorTerm {
    pub r_prime: u64,
    pub kind: TermKind,
    #[serde(serialize_with = "ser_int")]
    pub f: BigInt,
    #[serde(serialize_with = "ser_int")]
    pub k: BigInt,
    #[serde(serialize_with = "ser_ratio")]
    pub contribution: BigRational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleKind {
    Orbit,
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusReport {
    pub p: u64,
    pub r: u32,
    pub n: u32,
    #[serde(serialize_with = "ser_int")]
    pub lambda: BigInt,
    #[serde(serialize_with = "ser_int")]
    pub epsilon: BigInt,
    pub phi_n: u64,
    pub terms: Vec<DivisorTerm>,
    /// `Λ / (φ(n)/2) - ε`, the quantity the bounds sandwich.
    #[serde(serialize_with = "ser_ratio")]
    pub sum: BigRational,
    pub bounds: Option<BoundsReport>,
    #[serde(serialize_with = "ser_opt_int")]
    pub oracle_lambda: Option<BigInt>,
    pub oracle: Option<OracleKind>,
    pub gronwall_ratio: Option<f64>,
    pub notes: Vec<String>,
}

impl CensusReport {
    /// Attaches an oracle count of `Λ`.
    pub fn with_oracle(mut self, value: BigInt, kind: OracleKind) -> Self {
        self.oracle_lambda = Some(value);
        self.oracle = Some(kind);
        self
    }

    pub fn oracle_agrees(&self) -> Option<bool> {
        self.oracle_lambda.as_ref().map(|v| *v == self.lambda)
    }

    pub fn bounds_hold(&self) -> Option<bool> {
        self.bounds.as_ref().map(BoundsReport::holds)
    }

    /// False when an attached oracle or the bounds disagree with the closed form.
    pub fn verified(&self) -> bool {
        self.oracle_agrees() != Some(false) && self.bounds_hold() != Some(false)
    }
}

pub(crate) fn check_census_input(p: u64, r: u32, n: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(LpError::NotPrime(p));
    }
    if r == 0 {
        return Err(LpError::ZeroDegree { r, n });
    }
    if n < 3 {
        return Err(LpError::Precondition("the census needs n >= 3"));
    }
    if p == 2 && r == 1 {
        return Err(LpError::QIsTwo);
    }
    Ok(())
}

/// `Λ(n, q)` for `q = p^r` from the divisor sums, with bounds when `r > 1`.
pub fn lambda_closed(p: u64, r: u32, n: u32) -> Result<CensusReport> {
    check_census_input(p, r, n)?;
    let r64 = r as u64;
    let mut terms = Vec::new();
    for d in divisors(r64).into_iter().filter(|&d| d > 1) {
        let (f, k) = (f_size(p, d as u32), k_size(p, d as u32));
        let contribution = BigRational::new(&f + &k, BigInt::from(2 * d));
        terms.push(DivisorTerm {
            r_prime: d,
            kind: TermKind::FPlusK,
            f,
            k,
            contribution,
        });
    }
    if n % 2 == 0 {
        for d in divisors(2 * r64).into_iter().filter(|&d| r64 % d != 0) {
            let (f, k) = (f_size(p, d as u32), k_size(p, d as u32));
            let contribution = BigRational::new(&f - &k, BigInt::from(2 * d));
            terms.push(DivisorTerm {
                r_prime: d,
                kind: TermKind::FMinusK,
                f,
                k,
                contribution,
            });
        }
    }
    let sum: BigRational = terms.iter().map(|t| t.contribution.clone()).sum();
    let eps = epsilon(p, n);
    let phi_n = phi(n as u64);
    let lambda_q = (&sum + BigRational::from(eps.clone())) * BigRational::new(BigInt::from(phi_n), BigInt::from(2));
    if !lambda_q.is_integer() || lambda_q.is_negative() {
        return Err(LpError::CheckFailed(format!("Λ({n}, {p}^{r}) = {lambda_q} is not a nonnegative integer")));
    }
    let lambda = lambda_q.to_integer();

    let mut notes = Vec::new();
    if r == 1 {
        let shortcut = &eps * BigInt::from(phi_n) / 2;
        if shortcut != lambda {
            notes.push(format!(
                "r = 1: the shortcut ε·φ(n)/2 = {shortcut} differs from the divisor-sum value {lambda}"
            ));
        }
    }
    if n == 3 {
        notes.push(
            "n = 3: every LP set is of pseudoregulus type; the closed form counts norm classes, \
             which can exceed the number of PΓL orbits"
                .to_string(),
        );
    }
    let bounds = if r > 1 { Some(check_bounds(p, r, n, &sum)?) } else { None };
    let gronwall_ratio = if r >= 3 { Some(gronwall_ratio(r64)?) } else { None };
    Ok(CensusReport {
        p,
        r,
        n,
        lambda,
        epsilon: eps,
        phi_n,
        terms,
        sum,
        bounds,
        oracle_lambda: None,
        oracle: None,
        gronwall_ratio,
        notes,
    })
}

#[cfg(test)]
fn per_phi(report: &CensusReport) -> BigRational {
    BigRational::from(report.lambda.clone()) * BigRational::new(BigInt::from(2), BigInt::from(report.phi_n))
}
