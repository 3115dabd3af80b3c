//! Upper and lower bounds on `Λ / (φ(n)/2) - ε` for `r > 1`.
//!
//! The bounds involve `p^(3r/4)` and similar powers that are irrational for
//! most `r`. They are evaluated as rational intervals: exact when every power
//! is integral, otherwise enclosures from integer `k`-th roots, refined until
//! the comparison with the exact census value is decided.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Serialize, Serializer};

use super::{big_pow, check_census_input, ser_ratio};
use crate::error::{LpError, Result};
use crate::gf::numtheory::{factorize, sigma};

/// `lo <= x <= hi`; strict on both sides unless `lo == hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn exact(v: BigRational) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    fn int(v: impl Into<BigInt>) -> Self {
        Self::exact(BigRational::from(v.into()))
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    fn add(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    fn sub(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    /// Multiplication by `c >= 0`.
    fn scale(&self, c: &BigRational) -> Interval {
        debug_assert!(!c.is_negative());
        Interval {
            lo: &self.lo * c,
            hi: &self.hi * c,
        }
    }

    /// `1/x` for `x > 0`.
    fn recip(&self) -> Interval {
        debug_assert!(self.lo.is_positive());
        Interval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        }
    }

    pub fn midpoint_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
        mid.to_f64().unwrap_or(f64::NAN)
    }
}

/// Fixed-point decimal rendering, rounded down or up.
fn decimal(v: &BigRational, digits: u32, up: bool) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits as usize);
    let scaled = v * BigRational::from(scale.clone());
    let i = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let (q, rem) = i.abs().div_rem(&scale);
    let sign = if i.is_negative() { "-" } else { "" };
    format!("{sign}{q}.{:0width$}", rem, width = digits as usize)
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", decimal(&self.lo, 6, false), decimal(&self.hi, 6, true))
        }
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Interval", 3)?;
        st.serialize_field("exact", &self.is_exact())?;
        st.serialize_field("value", &self.to_string())?;
        st.serialize_field("approx", &self.midpoint_f64())?;
        st.end()
    }
}

/// `p^(num/den)`, enclosed with `prec` fractional bits when irrational.
fn power(p: u64, num: u64, den: u64, prec: u32) -> Interval {
    let g = num.gcd(&den);
    let (num, den) = (num / g, den / g);
    let base = big_pow(p, num);
    if den == 1 {
        return Interval::int(base);
    }
    let k = den as u32;
    let root = base.nth_root(k);
    if num_traits::pow(root.clone(), k as usize) == base {
        return Interval::int(root);
    }
    let shifted: BigInt = base << (prec as usize * k as usize);
    let root = shifted.nth_root(k);
    let denom = BigInt::one() << prec as usize;
    Interval {
        lo: BigRational::new(root.clone(), denom.clone()),
        hi: BigRational::new(root + 1, denom),
    }
}

fn rat(v: impl Into<BigInt>) -> BigRational {
    BigRational::from(v.into())
}

/// The three shapes of `r` the bounds distinguish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundShape {
    Odd,
    PowerOfTwo,
    EvenMixed,
}

impl BoundShape {
    fn of(r: u64) -> Self {
        let primes = factorize(r);
        if r % 2 == 1 {
            BoundShape::Odd
        } else if primes.len() == 1 {
            BoundShape::PowerOfTwo
        } else {
            BoundShape::EvenMixed
        }
    }
}

fn evaluate(p: u64, r: u32, n: u32, prec: u32) -> (Interval, Interval, BoundShape) {
    let r = r as u64;
    let factors = factorize(r);
    let r1 = factors[0].0;
    let s1 = if r1 == 2 { factors[0].1 as u64 } else { 0 };
    let sig = sigma(r) as i64;
    let sig2 = sigma(2 * r) as i64;
    let ri = r as i64;
    let shape = BoundShape::of(r);
    let one = Interval::int(1);
    let tail = |upto: u64| -> Interval { Interval::int((1..=upto).map(|i| big_pow(p, 1 << (i - 1))).sum::<BigInt>()) };
    let over = |c: i64, num: u64, den: u64| power(p, num, den, prec).recip().scale(&rat(c));

    if n % 2 == 1 {
        let lead = BigRational::new(big_pow(p, r), BigInt::from(2 * r));
        let lower = Interval::exact(BigRational::new(big_pow(p, r) - p, BigInt::from(2 * r)));
        let upper = match shape {
            BoundShape::Odd => one.add(&over(sig - ri - 1, r - r / r1, 1)).scale(&lead),
            BoundShape::PowerOfTwo => one.add(&over(sig - ri - 1, r, 2)).scale(&lead).add(&tail(s1)),
            BoundShape::EvenMixed => one
                .add(&over(sig - ri, r, 2))
                .add(&over(sig - ri - 1, 3 * r, 4))
                .scale(&lead),
        };
        (lower, upper, shape)
    } else {
        let lead = BigRational::new(big_pow(p, 2 * r), BigInt::from(4 * r));
        let base = one.add(&over(sig2 - 2 * ri - 1, r, 1));
        let upper = match shape {
            BoundShape::Odd => base.scale(&lead),
            BoundShape::PowerOfTwo => base.scale(&lead).add(&tail(s1)),
            BoundShape::EvenMixed => base
                .add(&over(2, 3 * r, 2))
                .add(&over(2 * (sig - ri - 1), 7 * r, 4))
                .scale(&lead),
        };
        let lower = match shape {
            BoundShape::PowerOfTwo => {
                Interval::exact(BigRational::new(big_pow(p, 2 * r) - p, BigInt::from(4 * r))).sub(&tail(s1 + 1))
            }
            _ => one
                .sub(&over(1, r, 1))
                .sub(&over(sig2 - 2 * ri - 1, 3 * r, 2))
                .sub(&over(1, 2 * r - 1, 1))
                .scale(&lead),
        };
        (lower, upper, shape)
    }
}

/// The bounds at 128 fractional bits of precision.
pub fn lambda_bounds(p: u64, r: u32, n: u32) -> Result<(Interval, Interval)> {
    check_bounds_input(p, r, n)?;
    let (lower, upper, _) = evaluate(p, r, n, 128);
    Ok((lower, upper))
}

fn check_bounds_input(p: u64, r: u32, n: u32) -> Result<()> {
    check_census_input(p, r, n)?;
    if r == 1 {
        return Err(LpError::Precondition("the bounds need r > 1"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Strict,
    Equal,
    Violated,
}

fn lower_side(v: &BigRational, b: &Interval) -> Option<Side> {
    if b.hi < *v {
        Some(Side::Strict)
    } else if b.is_exact() {
        Some(if b.lo == *v { Side::Equal } else { Side::Violated })
    } else if *v <= b.lo {
        Some(Side::Violated)
    } else {
        None
    }
}

fn upper_side(v: &BigRational, b: &Interval) -> Option<Side> {
    if *v < b.lo {
        Some(Side::Strict)
    } else if b.is_exact() {
        Some(if b.lo == *v { Side::Equal } else { Side::Violated })
    } else if *v >= b.hi {
        Some(Side::Violated)
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub lower: Interval,
    pub upper: Interval,
    pub shape: BoundShape,
    #[serde(serialize_with = "ser_ratio")]
    pub value: BigRational,
    pub lower_side: Side,
    pub upper_side: Side,
    pub precision_bits: u32,
}

impl BoundsReport {
    /// Both inequalities strict.
    pub fn holds(&self) -> bool {
        self.lower_side == Side::Strict && self.upper_side == Side::Strict
    }
}

const MAX_PRECISION: u32 = 1 << 14;

/// Compares `value` (the census sum `Λ/(φ(n)/2) - ε`) with both bounds,
/// refining the enclosures until each side is decided.
pub fn check_bounds(p: u64, r: u32, n: u32, value: &BigRational) -> Result<BoundsReport> {
    check_bounds_input(p, r, n)?;
    let mut prec = 64;
    loop {
        let (lower, upper, shape) = evaluate(p, r, n, prec);
        if let (Some(lower_side), Some(upper_side)) = (lower_side(value, &lower), upper_side(value, &upper)) {
            return Ok(BoundsReport {
                lower,
                upper,
                shape,
                value: value.clone(),
                lower_side,
                upper_side,
                precision_bits: prec,
            });
        }
        if prec >= MAX_PRECISION {
            return Err(LpError::CheckFailed(format!(
                "bounds at (p, r, n) = ({p}, {r}, {n}) undecided after {prec} bits"
            )));
        }
        prec *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::lambda_closed;

    #[test]
    fn powers_enclose() {
        let two = power(2, 1, 2, 64);
        assert!(!two.is_exact());
        let sq = |x: &BigRational| x * x;
        assert!(sq(&two.lo) < rat(2) && sq(&two.hi) > rat(2));
        assert_eq!(power(3, 8, 4, 64), Interval::int(9));
        assert_eq!(power(4, 3, 2, 64), Interval::int(8));
    }

    #[test]
    fn examples() {
        let rep = lambda_closed(2, 2, 3).unwrap();
        let b = rep.bounds.unwrap();
        assert_eq!(b.lower, Interval::exact(BigRational::new(1.into(), 2.into())));
        assert_eq!(b.value, rat(1));
        assert!(b.holds());
        let b = lambda_closed(3, 2, 3).unwrap().bounds.unwrap();
        assert_eq!(b.shape, BoundShape::PowerOfTwo);
        assert!(b.holds());
        let b = lambda_closed(2, 6, 4).unwrap().bounds.unwrap();
        assert_eq!(b.shape, BoundShape::EvenMixed);
        assert!(b.holds());
        assert!(lambda_bounds(7, 1, 5).is_err());
    }

    #[test]
    fn odd_prime_r_meets_lower_bound() {
        let b = lambda_closed(3, 5, 3).unwrap().bounds.unwrap();
        assert_eq!(b.lower_side, Side::Equal);
        assert_eq!(b.upper_side, Side::Strict);
    }

    #[test]
    fn decimal_rendering() {
        let v = BigRational::new(BigInt::from(-7), BigInt::from(4));
        assert_eq!(decimal(&v, 3, false), "-1.750");
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(decimal(&third, 2, true), "0.34");
    }
}
