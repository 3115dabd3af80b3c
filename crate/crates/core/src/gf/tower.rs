use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Serialize, Serializer};

use super::fp_linalg;
use super::fp_poly::{self, FpPoly};
use super::numtheory::{factorize, is_prime, pow_mod};
use crate::error::{LpError, Result};

/// Default upper bound on `p^(rn)` for building log/antilog tables.
pub const DEFAULT_TABLE_BUDGET: u64 = 1 << 20;
/// Hard ceiling on the field order; encodings live in a u64 and discrete
/// logs fall back to baby-step giant-step above the table budget.
pub const MAX_FIELD_ORDER: u64 = 1 << 40;

/// An element of F_{p^(rn)}, stored as its canonical integer encoding
/// `Σ c_i p^i` over the power basis of the tower's modulus.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps an encoding without range checking; see [`FieldTower::element`].
    pub const fn from_encoding_unchecked(value: u64) -> Self {
        FieldElement(value)
    }

    pub const fn encoding(self) -> u64 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u64(self.0)
    }
}

/// Whether to build discrete-log tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TablePolicy {
    /// Tables when the order fits the budget, polynomial arithmetic above.
    #[default]
    Auto,
    /// Tables or an error.
    Require,
    /// Polynomial arithmetic only.
    Never,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerOptions {
    pub modulus_override: Option<Vec<u64>>,
    pub tables: TablePolicy,
    pub table_budget: u64,
}

impl Default for TowerOptions {
    fn default() -> Self {
        TowerOptions {
            modulus_override: None,
            tables: TablePolicy::Auto,
            table_budget: DEFAULT_TABLE_BUDGET,
        }
    }
}

const NO_LOG: u32 = u32::MAX;

/// Log/antilog/Zech tables against the canonical generator.
#[derive(Clone)]
pub(crate) struct LogTables {
    /// `exp[k] = g^k`, `k < Q - 1`.
    pub(crate) exp: Vec<u32>,
    /// `log[x]` for `x != 0`; `log[0]` is unused.
    pub(crate) log: Vec<u32>,
    /// `zech[k] = log(1 + g^k)`, or `NO_LOG` when `1 + g^k = 0`.
    pub(crate) zech: Vec<u32>,
}

/// The tower F_p ⊂ F_q ⊂ F_{q^n} with `q = p^r`, realized as one field
/// F_{p^(rn)}. The subfield F_{p^d} is the fixed field of `x ↦ x^(p^d)`.
///
/// Immutable after construction; share it behind an `Arc`.
#[derive(Clone)]
pub struct FieldTower {
    p: u64,
    r: u32,
    n: u32,
    degree: u32,
    order: u64,
    modulus: Vec<u64>,
    generator: FieldElement,
    tables: Option<LogTables>,
    /// Column `j` holds the digits of `(α^j)^p`.
    frobenius_matrix: Vec<Vec<u64>>,
    /// `p^k mod (Q - 1)` for `k < degree`.
    p_pow_mod: Vec<u64>,
    q_basis: Vec<FieldElement>,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTower")
            .field("p", &self.p)
            .field("r", &self.r)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .field("tables", &self.tables.is_some())
            .finish()
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r && self.n == other.n && self.modulus == other.modulus
    }
}

impl Eq for FieldTower {}

/// Builds the tower with the canonical modulus (or a checked override).
pub fn build_field(p: u64, r: u32, n: u32, modulus_override: Option<Vec<u64>>) -> Result<FieldTower> {
    FieldTower::with_options(
        p,
        r,
        n,
        TowerOptions {
            modulus_override,
            ..TowerOptions::default()
        },
    )
}

impl FieldTower {
    pub fn new(p: u64, r: u32, n: u32) -> Result<Self> {
        Self::with_options(p, r, n, TowerOptions::default())
    }

    pub fn with_options(p: u64, r: u32, n: u32, options: TowerOptions) -> Result<Self> {
        if !is_prime(p) {
            return Err(LpError::NotPrime(p));
        }
        if r == 0 || n == 0 {
            return Err(LpError::ZeroDegree { r, n });
        }
        let degree = r.checked_mul(n).ok_or(LpError::Overflow("degree"))?;
        let order = (p as u128)
            .checked_pow(degree)
            .filter(|&o| o <= MAX_FIELD_ORDER as u128)
            .ok_or(LpError::FieldTooLarge {
                order: (p as u128).saturating_pow(degree),
                ceiling: MAX_FIELD_ORDER,
            })? as u64;
        let use_tables = match options.tables {
            TablePolicy::Never => false,
            TablePolicy::Auto => order <= options.table_budget.min(1 << 31),
            TablePolicy::Require => {
                if order > options.table_budget.min(1 << 31) {
                    return Err(LpError::TablesOverBudget {
                        order,
                        budget: options.table_budget,
                    });
                }
                true
            }
        };

        let modulus = match options.modulus_override {
            Some(m) => {
                if m.len() != degree as usize + 1 || m[degree as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(LpError::BadModulus { expected: degree, got: m });
                }
                if !fp_poly::is_irreducible(&m, p) {
                    return Err(LpError::ReducibleModulus(m));
                }
                m
            }
            None => fp_poly::canonical_irreducible(degree, p),
        };

        let mut tower = FieldTower {
            p,
            r,
            n,
            degree,
            order,
            modulus,
            generator: FieldElement::ONE,
            tables: None,
            frobenius_matrix: Vec::new(),
            p_pow_mod: Vec::new(),
            q_basis: Vec::new(),
        };
        let m = order - 1;
        tower.p_pow_mod = (0..degree).map(|k| pow_mod(p, k as u64, m.max(1))).collect();
        tower.generator = tower.find_generator();
        tower.frobenius_matrix = (0..degree)
            .map(|j| {
                let basis = tower.from_digits(&unit_vector(j as usize, degree as usize));
                tower.digits(tower.poly_pow(basis, p as u128))
            })
            .collect();
        if use_tables {
            tower.tables = Some(tower.build_tables());
        }
        tower.q_basis = tower.find_q_basis();
        Ok(tower)
    }

    // ---- accessors -------------------------------------------------------

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    /// Absolute degree `rn` over F_p.
    pub fn degree(&self) -> u32 {
        self.degree
    }
    /// `q = p^r`.
    pub fn q(&self) -> u64 {
        self.p.pow(self.r)
    }
    /// `q^n = p^(rn)`.
    pub fn order(&self) -> u64 {
        self.order
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    pub fn generator(&self) -> FieldElement {
        self.generator
    }
    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }
    /// An F_q-basis of F_{q^n}.
    pub fn q_basis(&self) -> &[FieldElement] {
        &self.q_basis
    }
    pub fn frobenius_matrix(&self) -> &[Vec<u64>] {
        &self.frobenius_matrix
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }
    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Checked conversion from an encoding.
    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value < self.order {
            Ok(FieldElement(value))
        } else {
            Err(LpError::BadEncoding {
                value,
                order: self.order,
            })
        }
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        x.0 < self.order
    }

    /// The prime-field element `c mod p`.
    pub fn from_int(&self, c: i64) -> FieldElement {
        FieldElement(c.rem_euclid(self.p as i64) as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.order).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.order).map(FieldElement)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(0..self.order))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(1..self.order))
    }

    /// `g^k` for the canonical generator, any integer `k`.
    pub fn gen_pow(&self, k: i128) -> FieldElement {
        let m = (self.order - 1) as i128;
        self.pow(self.generator, k.rem_euclid(m) as u128)
    }

    // ---- digits ----------------------------------------------------------

    pub fn digits(&self, x: FieldElement) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.degree as usize);
        let mut rest = x.0;
        for _ in 0..self.degree {
            out.push(rest % self.p);
            rest /= self.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u64]) -> FieldElement {
        FieldElement(digits.iter().rev().fold(0u64, |acc, &d| acc * self.p + d % self.p))
    }

    // ---- arithmetic ------------------------------------------------------

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(x.0 ^ y.0);
        }
        if x.0 == 0 {
            return y;
        }
        if y.0 == 0 {
            return x;
        }
        match &self.tables {
            Some(t) => {
                let m = self.order - 1;
                let lx = t.log[x.0 as usize] as u64;
                let ly = t.log[y.0 as usize] as u64;
                let z = t.zech[((ly + m - lx) % m) as usize];
                if z == NO_LOG {
                    FieldElement::ZERO
                } else {
                    FieldElement(t.exp[((lx + z as u64) % m) as usize] as u64)
                }
            }
            None => self.add_digits(x, y),
        }
    }

    fn add_digits(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let (mut a, mut b) = (x.0, y.0);
        let mut out = 0u64;
        let mut place = 1u64;
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place = place.wrapping_mul(self.p);
        }
        FieldElement(out)
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        if self.p == 2 || x.0 == 0 {
            return x;
        }
        let d: Vec<u64> = self.digits(x).into_iter().map(|c| (self.p - c) % self.p).collect();
        self.from_digits(&d)
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.0 == 0 || y.0 == 0 {
            return FieldElement::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let m = self.order - 1;
                let s = t.log[x.0 as usize] as u64 + t.log[y.0 as usize] as u64;
                FieldElement(t.exp[(s % m) as usize] as u64)
            }
            None => self.poly_mul(x, y),
        }
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.0 == 0 {
            return Err(LpError::ZeroInverse);
        }
        Ok(self.inv_nonzero(x))
    }

    /// Inverse of a nonzero element; zero maps to zero.
    pub(crate) fn inv_nonzero(&self, x: FieldElement) -> FieldElement {
        if x.0 == 0 {
            return x;
        }
        match &self.tables {
            Some(t) => {
                let m = self.order - 1;
                let l = t.log[x.0 as usize] as u64;
                FieldElement(t.exp[((m - l) % m) as usize] as u64)
            }
            None => self.poly_pow(x, (self.order - 2) as u128),
        }
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^e` for a nonnegative exponent; `0^0 = 1`.
    pub fn pow(&self, x: FieldElement, e: u128) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if x.0 == 0 {
            return FieldElement::ZERO;
        }
        let m = (self.order - 1) as u128;
        let e = e % m;
        match &self.tables {
            Some(t) => {
                let l = t.log[x.0 as usize] as u128;
                FieldElement(t.exp[(l * e % m) as usize] as u64)
            }
            None => self.poly_pow(x, e),
        }
    }

    /// `x^e` for any integer exponent; negative exponents need `x != 0`.
    pub fn powi(&self, x: FieldElement, e: i128) -> Result<FieldElement> {
        if e >= 0 {
            return Ok(self.pow(x, e as u128));
        }
        let inv = self.inv(x)?;
        Ok(self.pow(inv, e.unsigned_abs()))
    }

    /// `x^(p^k)`, `k` reduced mod `rn`.
    pub fn frobenius(&self, x: FieldElement, k: i64) -> FieldElement {
        if x.0 == 0 || x.0 == 1 {
            return x;
        }
        let k = k.rem_euclid(self.degree as i64) as u32;
        if k == 0 {
            return x;
        }
        match &self.tables {
            Some(t) => {
                let m = self.order - 1;
                let l = t.log[x.0 as usize] as u128;
                let e = self.p_pow_mod[k as usize] as u128;
                FieldElement(t.exp[(l * e % m as u128) as usize] as u64)
            }
            None => {
                let mut d = self.digits(x);
                for _ in 0..k {
                    d = self.apply_frobenius_matrix(&d);
                }
                self.from_digits(&d)
            }
        }
    }

    fn apply_frobenius_matrix(&self, d: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.degree as usize];
        for (j, &c) in d.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (i, &v) in self.frobenius_matrix[j].iter().enumerate() {
                out[i] = (out[i] + c * v) % self.p;
            }
        }
        out
    }

    fn check_divisor(&self, d: u32) -> Result<()> {
        if d == 0 || self.degree % d != 0 {
            Err(LpError::NotADivisor {
                d,
                degree: self.degree,
            })
        } else {
            Ok(())
        }
    }

    /// Norm onto F_{p^d}: `x^((p^(rn) - 1)/(p^d - 1))`.
    pub fn norm_to(&self, x: FieldElement, d: u32) -> Result<FieldElement> {
        self.check_divisor(d)?;
        let e = (self.order - 1) / (self.p.pow(d) - 1);
        Ok(self.pow(x, e as u128))
    }

    /// Trace onto F_{p^d}: `Σ_{i < rn/d} x^(p^(di))`.
    pub fn trace_to(&self, x: FieldElement, d: u32) -> Result<FieldElement> {
        self.check_divisor(d)?;
        Ok((0..self.degree / d).fold(FieldElement::ZERO, |acc, i| {
            self.add(acc, self.frobenius(x, (d * i) as i64))
        }))
    }

    /// `N_{q^n/q^e}` for `e | n`.
    pub fn norm_q(&self, x: FieldElement, e: u32) -> Result<FieldElement> {
        self.norm_to(x, self.r * e)
    }

    /// `Tr_{q^n/q}`.
    pub fn trace_q(&self, x: FieldElement) -> FieldElement {
        self.trace_to(x, self.r).expect("r divides rn")
    }

    pub fn in_subfield(&self, x: FieldElement, d: u32) -> bool {
        self.frobenius(x, d as i64) == x
    }

    /// Discrete log to the canonical generator.
    pub fn log(&self, x: FieldElement) -> Option<u64> {
        if x.0 == 0 {
            return None;
        }
        match &self.tables {
            Some(t) => Some(t.log[x.0 as usize] as u64),
            None => Some(self.bsgs(x)),
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, x: FieldElement) -> Option<u64> {
        if x.0 == 0 {
            return None;
        }
        let mut ord = self.order - 1;
        for (l, _) in factorize(self.order - 1) {
            while ord % l == 0 && self.pow(x, (ord / l) as u128) == FieldElement::ONE {
                ord /= l;
            }
        }
        Some(ord)
    }

    // ---- text encodings --------------------------------------------------

    /// Accepts a decimal encoding or `g^k` (k may be negative).
    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix("g^") {
            let k = i128::from_str(rest.trim()).map_err(|e| LpError::Parse(format!("`{text}`: {e}")))?;
            return Ok(self.gen_pow(k));
        }
        if text == "g" {
            return Ok(self.generator);
        }
        let v = u64::from_str(text).map_err(|e| LpError::Parse(format!("`{text}`: {e}")))?;
        self.element(v)
    }

    // ---- construction internals -------------------------------------------

    fn poly_mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let a = self.digits(x);
        let b = self.digits(y);
        let prod = fp_poly::mul_mod(&a, &b, &self.modulus, self.p);
        let mut d = prod;
        d.resize(self.degree as usize, 0);
        self.from_digits(&d)
    }

    fn poly_pow(&self, x: FieldElement, mut e: u128) -> FieldElement {
        let mut acc = FieldElement::ONE;
        let mut b = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_mul(acc, b);
            }
            b = self.poly_mul(b, b);
            e >>= 1;
        }
        acc
    }

    fn find_generator(&self) -> FieldElement {
        let m = self.order - 1;
        if m == 1 {
            return FieldElement::ONE;
        }
        let primes: Vec<u64> = factorize(m).into_iter().map(|(l, _)| l).collect();
        (1..self.order)
            .map(FieldElement)
            .find(|&x| primes.iter().all(|&l| self.poly_pow(x, (m / l) as u128) != FieldElement::ONE))
            .expect("the multiplicative group is cyclic")
    }

    fn build_tables(&self) -> LogTables {
        let m = (self.order - 1) as usize;
        let mut exp = vec![0u32; m.max(1)];
        let mut log = vec![NO_LOG; self.order as usize];
        let mut cur = FieldElement::ONE;
        for (k, slot) in exp.iter_mut().enumerate().take(m) {
            *slot = cur.0 as u32;
            log[cur.0 as usize] = k as u32;
            cur = self.poly_mul(cur, self.generator);
        }
        let zech = (0..m)
            .map(|k| {
                // 1 + g^k: bump the constant digit.
                let x = exp[k] as u64;
                let c0 = x % self.p;
                let y = x - c0 + (c0 + 1) % self.p;
                if y == 0 {
                    NO_LOG
                } else {
                    log[y as usize]
                }
            })
            .collect();
        LogTables { exp, log, zech }
    }

    fn bsgs(&self, x: FieldElement) -> u64 {
        let m = self.order - 1;
        let step = (m as f64).sqrt().ceil() as u64 + 1;
        let mut baby = HashMap::with_capacity(step as usize);
        let mut cur = FieldElement::ONE;
        for j in 0..step {
            baby.entry(cur.0).or_insert(j);
            cur = self.poly_mul(cur, self.generator);
        }
        let giant = self.poly_pow(self.inv_nonzero(self.generator), step as u128);
        let mut gamma = x;
        for i in 0..=step {
            if let Some(&j) = baby.get(&gamma.0) {
                return (i * step + j) % m;
            }
            gamma = self.poly_mul(gamma, giant);
        }
        unreachable!("every nonzero element is a power of the generator")
    }

    /// Greedy F_q-basis of F_{q^n} drawn from the power basis (then all elements).
    fn find_q_basis(&self) -> Vec<FieldElement> {
        let q = self.q();
        let h = self.pow(self.generator, ((self.order - 1) / (q - 1)) as u128);
        let fq_basis: Vec<FieldElement> = (0..self.r).map(|t| self.pow(h, t as u128)).collect();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        let mut basis = Vec::new();
        let candidates = (0..self.degree)
            .map(|j| FieldElement(self.p.pow(j)))
            .chain(self.nonzero_elements());
        for c in candidates {
            if basis.len() == self.n as usize {
                break;
            }
            let mut trial = rows.clone();
            trial.extend(fq_basis.iter().map(|&w| self.digits(self.mul(c, w))));
            if fp_linalg::rank(&trial, self.p) == trial.len() {
                rows = trial;
                basis.push(c);
            }
        }
        basis
    }
}

fn unit_vector(j: usize, len: usize) -> FpPoly {
    let mut v = vec![0u64; len];
    v[j] = 1;
    v
}
