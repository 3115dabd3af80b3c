//! Equivalence and automorphisms of Lunardon-Polverino linear sets
//! `L_f`, `f = X^(q^s) + θ X^(q^(n-s))`.
//!
//! Closed-form criteria live here; [`brute`] holds the exhaustive PΓL
//! oracles and [`aut`] the automorphism groups.

pub mod aut;
pub mod brute;

use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{LpError, Result};
use crate::gf::numtheory::gcd;
use crate::gf::{FieldElement, FieldTower};
use crate::linpoly::{LPParams, LinearizedPoly};
use crate::linset::{apply_map, points_of, SemilinearMap};

pub use aut::{automorphisms, n_tau, predicted_aut_size, AutGroup};
pub use brute::{
    brute_force_equivalent, brute_force_maps, brute_force_stabilizer, BruteForceMode, BruteForceOptions,
    DEFAULT_BRUTE_FORCE_CEILING,
};

/// All `x` with `x^e = target`, ascending by encoding.
pub fn solve_power(t: &FieldTower, e: u128, target: FieldElement) -> Vec<FieldElement> {
    if target.is_zero() {
        return if e == 0 { Vec::new() } else { vec![FieldElement::ZERO] };
    }
    let m = (t.order() - 1) as i128;
    let e = (e % m as u128) as i128;
    let l = t.log(target).expect("nonzero element has a logarithm") as i128;
    let g = e.gcd(&m);
    if l % g != 0 {
        return Vec::new();
    }
    let (mg, eg) = (m / g, e / g);
    let inv = eg.extended_gcd(&mg).x.rem_euclid(mg.max(1));
    let x0 = if mg == 1 { 0 } else { (l / g) % mg * inv % mg };
    let mut out: Vec<FieldElement> = (0..g).map(|k| t.gen_pow(x0 + k * mg)).collect();
    out.sort();
    out
}

fn norm1(t: &FieldTower, x: FieldElement) -> FieldElement {
    t.norm_q(x, 1).expect("1 divides n")
}

fn norm2(t: &FieldTower, x: FieldElement) -> FieldElement {
    t.norm_q(x, 2).expect("n even")
}

/// `N(x)` for odd `n`, `N_{q^n/q^2}(x)` for even `n`: the invariant the criteria compare.
pub fn class_norm(t: &FieldTower, x: FieldElement) -> FieldElement {
    if t.n() % 2 == 1 {
        norm1(t, x)
    } else {
        norm2(t, x)
    }
}

fn sigma_exponent(t: &FieldTower, s: u32) -> i64 {
    (t.r() * s) as i64
}

/// `(s, θ)` when `s < n/2`, else `(n - s, θ^-1)`; the two LP sets are equivalent.
pub fn normalize_s(t: &FieldTower, s: u32, theta: FieldElement) -> Result<LPParams> {
    if theta.is_zero() {
        return Err(LpError::InvalidTheta);
    }
    let params = LPParams::new(t, s, theta)?;
    if 2 * s < t.n() {
        Ok(params)
    } else {
        LPParams::new(t, t.n() - s, t.inv(theta)?)
    }
}

/// Whether `α^(σ²-1) = (θ/δ)^σ` has a solution, via the norm criterion.
pub fn alpha_condition(t: &FieldTower, _s: u32, theta: FieldElement, delta: FieldElement) -> Result<bool> {
    nonzero_pair(theta, delta)?;
    Ok(class_norm(t, theta) == class_norm(t, delta))
}

/// Exhaustive α-scan for the same equation.
pub fn alpha_condition_scan(t: &FieldTower, s: u32, theta: FieldElement, delta: FieldElement) -> Result<bool> {
    nonzero_pair(theta, delta)?;
    let sigma = sigma_exponent(t, s);
    let rhs = t.frobenius(t.div(theta, delta)?, sigma);
    Ok(t.nonzero_elements().any(|a| {
        let a_sigma2 = t.frobenius(a, 2 * sigma);
        t.mul(a_sigma2, t.inv_nonzero(a)) == rhs
    }))
}

fn nonzero_pair(theta: FieldElement, delta: FieldElement) -> Result<()> {
    if theta.is_zero() || delta.is_zero() {
        Err(LpError::Precondition("theta and delta nonzero"))
    } else {
        Ok(())
    }
}

/// Solutions of `d^(σ+1) = (θ/δ)^σ`, ascending by encoding.
pub fn d_solutions(t: &FieldTower, s: u32, theta: FieldElement, delta: FieldElement) -> Result<Vec<FieldElement>> {
    nonzero_pair(theta, delta)?;
    let rhs = t.frobenius(t.div(theta, delta)?, sigma_exponent(t, s));
    let sigma = (t.q() as u128).pow(s);
    Ok(solve_power(t, sigma + 1, rhs))
}

/// Existence of `d` with `L_f = L_{d g}`: `N(θ) ∈ {N(δ), N(1/δ)}` for odd `n`,
/// `N_2(θ) ∈ {N_2(δ), N_2(1/δ)^σ}` for even `n`.
pub fn exists_d(t: &FieldTower, s: u32, theta: FieldElement, delta: FieldElement) -> Result<bool> {
    nonzero_pair(theta, delta)?;
    let a = class_norm(t, theta);
    let b = class_norm(t, delta);
    let b_inv = t.inv(b)?;
    let second = if t.n() % 2 == 1 {
        b_inv
    } else {
        t.frobenius(b_inv, sigma_exponent(t, s))
    };
    Ok(a == b || a == second)
}

/// The same membership without the σ on the `1/δ` branch (identical for odd `n`).
pub fn exists_d_untwisted(t: &FieldTower, theta: FieldElement, delta: FieldElement) -> Result<bool> {
    nonzero_pair(theta, delta)?;
    let a = class_norm(t, theta);
    let b = class_norm(t, delta);
    Ok(a == b || a == t.inv(b)?)
}

/// Exhaustive scan: some `d != 0` with `L_f = L_{d g}` as point sets.
pub fn exists_d_scan(t: &Arc<FieldTower>, s: u32, theta: FieldElement, delta: FieldElement) -> Result<bool> {
    Ok(!d_scan(t, s, theta, delta)?.is_empty())
}

/// All `d != 0` with `L_f = L_{d g}`, ascending by encoding.
pub fn d_scan(t: &Arc<FieldTower>, s: u32, theta: FieldElement, delta: FieldElement) -> Result<Vec<FieldElement>> {
    let f = LinearizedPoly::lp(t, &LPParams::new(t, s, theta)?);
    let g = LinearizedPoly::lp(t, &LPParams::new(t, s, delta)?);
    let sf = slope_mask(t, &f);
    let sg: Vec<FieldElement> = slopes(t, &g);
    if sg.len() != sf.iter().filter(|&&b| b).count() {
        return Ok(Vec::new());
    }
    Ok(t.nonzero_elements()
        .filter(|&d| sg.iter().all(|&m| sf[t.mul(d, m).encoding() as usize]))
        .collect())
}

/// Distinct values of `f(x)/x`, `x != 0`.
pub(crate) fn slopes(t: &FieldTower, f: &LinearizedPoly) -> Vec<FieldElement> {
    let mask = slope_mask(t, f);
    mask.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| FieldElement::from_encoding_unchecked(i as u64))
        .collect()
}

pub(crate) fn slope_mask(t: &FieldTower, f: &LinearizedPoly) -> Vec<bool> {
    let mut mask = vec![false; t.order() as usize];
    for x in t.nonzero_elements() {
        mask[t.mul(f.evaluate(x), t.inv_nonzero(x)).encoding() as usize] = true;
    }
    mask
}

/// Result of the `n = 4` cross-map criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossReport {
    pub exists: bool,
    pub c_solutions: Vec<FieldElement>,
    /// Every returned `c` passed the value-multiset check.
    pub verified: bool,
}

/// `c` with `{c x / f(x)} = {g(x)/x}` for `f = X^q + θX^(q^3)`,
/// `g = X^q + δX^(q^3)` over F_{q^4}: they exist iff
/// `θ^(q²+1) ∈ {δ^(q²+1), δ^-(q³+q)}`, and then `c = d(θ^q - θ^(-q³))` with
/// `d^(q+1) = (δ / (-θ^(-q³)))^q`.
pub fn n4_cross(t: &Arc<FieldTower>, theta: FieldElement, delta: FieldElement) -> Result<CrossReport> {
    if t.n() != 4 {
        return Err(LpError::Precondition("n4_cross needs n = 4"));
    }
    nonzero_pair(theta, delta)?;
    let r = t.r() as i64;
    let q = t.q() as u128;
    let lhs = t.pow(theta, q * q + 1);
    let first = t.pow(delta, q * q + 1);
    let second = t.inv(t.pow(delta, q * q * q + q))?;
    if lhs != first && lhs != second {
        return Ok(CrossReport {
            exists: false,
            c_solutions: Vec::new(),
            verified: true,
        });
    }
    let theta_inv_q3 = t.frobenius(t.inv(theta)?, 3 * r);
    let scale = t.sub(t.frobenius(theta, r), theta_inv_q3);
    let mut cs: Vec<FieldElement> = d_solutions(t, 1, delta, t.neg(theta_inv_q3))?
        .into_iter()
        .map(|d| t.mul(d, scale))
        .collect();
    cs.sort();
    let f = LinearizedPoly::lp(t, &LPParams::new(t, 1, theta)?);
    let g = LinearizedPoly::lp(t, &LPParams::new(t, 1, delta)?);
    let oracle = CrossOracle::new(t, &f, &g)?;
    let verified = cs.iter().all(|&c| oracle.holds(c));
    Ok(CrossReport {
        exists: !cs.is_empty(),
        c_solutions: cs,
        verified,
    })
}

/// Value-multiset test of `{c x / f(x)} = {g(x)/x}` for a bijective `f`.
pub struct CrossOracle<'a> {
    t: &'a FieldTower,
    inv_counts: Vec<u64>,
    g_counts: Vec<u64>,
    inv_support: Vec<FieldElement>,
}

impl<'a> CrossOracle<'a> {
    pub fn new(t: &'a FieldTower, f: &LinearizedPoly, g: &LinearizedPoly) -> Result<Self> {
        let size = t.order() as usize;
        let mut inv_counts = vec![0u64; size];
        let mut g_counts = vec![0u64; size];
        for x in t.nonzero_elements() {
            let fx = f.evaluate(x);
            if fx.is_zero() {
                return Err(LpError::Precondition("f bijective"));
            }
            inv_counts[t.mul(x, t.inv_nonzero(fx)).encoding() as usize] += 1;
            g_counts[t.mul(g.evaluate(x), t.inv_nonzero(x)).encoding() as usize] += 1;
        }
        let inv_support = (0..size)
            .filter(|&i| inv_counts[i] > 0)
            .map(|i| FieldElement::from_encoding_unchecked(i as u64))
            .collect();
        Ok(CrossOracle {
            t,
            inv_counts,
            g_counts,
            inv_support,
        })
    }

    pub fn holds(&self, c: FieldElement) -> bool {
        if c.is_zero() {
            return false;
        }
        let g_support = self.g_counts.iter().filter(|&&k| k > 0).count();
        g_support == self.inv_support.len()
            && self.inv_support.iter().all(|&a| {
                self.g_counts[self.t.mul(c, a).encoding() as usize] == self.inv_counts[a.encoding() as usize]
            })
    }

    /// All `c != 0` satisfying the identity.
    pub fn scan(&self) -> Vec<FieldElement> {
        self.t.nonzero_elements().filter(|&c| self.holds(c)).collect()
    }
}

/// Exhaustive check that no `c != 0` gives `{c x / f(x)} = {g(x)/x}`, for
/// `n > 4` and `f` bijective. Returns `true` when no such `c` exists.
pub fn no_cross_above_4(f: &LinearizedPoly, g: &LinearizedPoly) -> Result<bool> {
    let t = f.tower();
    if t.n() <= 4 {
        return Err(LpError::Precondition("no_cross_above_4 needs n > 4"));
    }
    if f.tower() != g.tower() {
        return Err(LpError::CrossTower);
    }
    let oracle = CrossOracle::new(t, f, g)?;
    Ok(oracle.scan().is_empty())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EquivCase {
    #[serde(rename = "odd-n (a)")]
    OddN,
    #[serde(rename = "even-n (b)")]
    EvenN,
    #[serde(rename = "not-equivalent")]
    NotEquivalent,
}

/// A map `φ` with `L_f^φ = L_g`, plus the scalar it was built from
/// (`d` for `diag(1, d)`, `c` for the antidiagonal `[[0, 1], [c, 0]]`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(flatten)]
    pub map: SemilinearMap,
    pub scalar: FieldElement,
    pub antidiagonal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivVerdict {
    pub equivalent: bool,
    pub case: EquivCase,
    /// Least `k` such that the criterion holds with `τ = x ↦ x^(p^k)` applied to `δ`.
    pub tau_exponent: Option<u32>,
    pub witness: Option<Witness>,
    /// The witness was applied to `L_f` and reproduced `L_g` exactly.
    pub checked: bool,
}

/// The criterion `N(θ) ∈ {N(δ^τ), N(1/δ^τ)}` (odd `n`) or its `N_{q^n/q^2}`
/// analogue (even `n`) for `τ = x ↦ x^(p^k)`.
pub fn criterion_holds(t: &FieldTower, theta: FieldElement, delta: FieldElement, k: u32) -> bool {
    let a = class_norm(t, theta);
    let b = class_norm(t, t.frobenius(delta, k as i64));
    a == b || t.mul(a, b) == FieldElement::ONE
}

pub(crate) fn check_lp_input(t: &FieldTower, s: u32, theta: FieldElement) -> Result<()> {
    if s == 0 || 2 * s >= t.n() {
        return Err(LpError::Unnormalized { s, n: t.n() });
    }
    let params = LPParams::new(t, s, theta)?;
    if !params.is_valid(t) {
        return Err(LpError::InvalidTheta);
    }
    Ok(())
}

/// Decides whether `L_f` and `L_g` are PΓL-equivalent, `f = lp(s, θ)`,
/// `g = lp(t, δ)`, both normalized and valid. A witness is searched over
/// `τ` ascending, then `d` ascending (`diag(1, d)` with `L_g = L_{d f^τ}`),
/// then for `n = 4` the antidiagonal maps, and checked on the point sets.
pub fn lp_equivalent(
    tower: &Arc<FieldTower>,
    s: u32,
    theta: FieldElement,
    t_param: u32,
    delta: FieldElement,
) -> Result<EquivVerdict> {
    let t = &**tower;
    check_lp_input(t, s, theta)?;
    check_lp_input(t, t_param, delta)?;
    let not_equivalent = EquivVerdict {
        equivalent: false,
        case: EquivCase::NotEquivalent,
        tau_exponent: None,
        witness: None,
        checked: false,
    };
    if s != t_param {
        return Ok(not_equivalent);
    }
    let Some(tau) = (0..t.degree()).find(|&k| criterion_holds(t, theta, delta, k)) else {
        return Ok(not_equivalent);
    };
    let case = if t.n() % 2 == 1 { EquivCase::OddN } else { EquivCase::EvenN };
    let witness = find_witness(tower, s, theta, delta)?;
    Ok(EquivVerdict {
        equivalent: true,
        case,
        tau_exponent: Some(tau),
        checked: witness.is_some(),
        witness,
    })
}

fn find_witness(tower: &Arc<FieldTower>, s: u32, theta: FieldElement, delta: FieldElement) -> Result<Option<Witness>> {
    let t = &**tower;
    let lf = points_of(&LinearizedPoly::lp(tower, &LPParams::new(t, s, theta)?))?;
    let lg = points_of(&LinearizedPoly::lp(tower, &LPParams::new(t, s, delta)?))?;
    let transports = |map: &SemilinearMap| apply_map(t, &lf, map).same_points(&lg);
    for k in 0..t.degree() {
        let theta_tau = t.frobenius(theta, k as i64);
        for d in d_solutions(t, s, delta, theta_tau)? {
            let map = SemilinearMap::diagonal(t, d, k)?;
            if transports(&map) {
                return Ok(Some(Witness {
                    map,
                    scalar: d,
                    antidiagonal: false,
                }));
            }
        }
    }
    if t.n() == 4 {
        for k in 0..t.degree() {
            let theta_tau = t.frobenius(theta, k as i64);
            for c in n4_cross(tower, theta_tau, delta)?.c_solutions {
                let map = SemilinearMap::antidiagonal(t, c, k)?;
                if transports(&map) {
                    return Ok(Some(Witness {
                        map,
                        scalar: c,
                        antidiagonal: true,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// `gcd(q^s + 1, q^n - 1)`: 1 (n odd, q even), 2 (n odd, q odd), q + 1 (n even).
pub fn d_count_formula(q: u64, n: u32) -> u64 {
    match (n % 2, q % 2) {
        (1, 0) => 1,
        (1, _) => 2,
        _ => q + 1,
    }
}

/// Representatives `1 <= s < n/2` with `gcd(s, n) = 1`.
pub fn normalized_s_values(n: u32) -> Vec<u32> {
    (1..n).filter(|&s| 2 * s < n && gcd(s as u64, n as u64) == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower(p: u64, r: u32, n: u32) -> Arc<FieldTower> {
        Arc::new(FieldTower::new(p, r, n).unwrap())
    }

    fn valid_thetas(t: &FieldTower) -> Vec<FieldElement> {
        t.nonzero_elements()
            .filter(|&x| LPParams::new(t, 1, x).unwrap().is_valid(t))
            .collect()
    }

    #[test]
    fn solve_power_matches_scan() {
        let t = tower(3, 1, 4);
        for e in [1u128, 2, 4, 10, 80, 81, 160] {
            for target in t.nonzero_elements().step_by(7) {
                let scan: Vec<_> = t.nonzero_elements().filter(|&x| t.pow(x, e) == target).collect();
                assert_eq!(solve_power(&t, e, target), scan, "e = {e}");
            }
        }
    }

    #[test]
    fn normalize_examples() {
        let t = tower(2, 1, 5);
        let th = t.gen_pow(3);
        assert_eq!(normalize_s(&t, 1, th).unwrap(), LPParams { s: 1, theta: th });
        assert_eq!(normalize_s(&t, 4, th).unwrap(), LPParams { s: 1, theta: t.inv(th).unwrap() });
        let n = normalize_s(&t, 4, th).unwrap();
        assert_eq!(normalize_s(&t, n.s, n.theta).unwrap(), n);
        let t4 = tower(3, 1, 4);
        let th4 = t4.gen_pow(5);
        assert_eq!(normalize_s(&t4, 3, th4).unwrap(), LPParams { s: 1, theta: t4.inv(th4).unwrap() });
        assert!(normalize_s(&t4, 2, th4).is_err());
    }

    #[test]
    fn alpha_condition_against_scan() {
        for (p, r, n) in [(3, 1, 3), (3, 1, 4), (2, 2, 3)] {
            let t = tower(p, r, n);
            let xs: Vec<_> = t.nonzero_elements().step_by(3).collect();
            for &th in &xs {
                for &de in xs.iter().step_by(2) {
                    assert_eq!(
                        alpha_condition(&t, 1, th, de).unwrap(),
                        alpha_condition_scan(&t, 1, th, de).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn d_counts_for_delta_equal_theta() {
        for (p, r, n) in [(3, 1, 3), (2, 2, 3), (5, 1, 3), (3, 1, 4), (2, 1, 5), (3, 1, 5)] {
            let t = tower(p, r, n);
            for s in normalized_s_values(n) {
                for th in t.nonzero_elements().step_by(5) {
                    let count = d_solutions(&t, s, th, th).unwrap().len() as u64;
                    assert_eq!(count, d_count_formula(t.q(), n));
                }
            }
        }
    }

    #[test]
    fn d_solutions_match_point_scan() {
        let t = tower(3, 1, 3);
        let thetas = valid_thetas(&t);
        for &th in &thetas {
            for &de in &thetas {
                let scan = d_scan(&t, 1, th, de).unwrap();
                assert_eq!(exists_d(&t, 1, th, de).unwrap(), !scan.is_empty());
                if !scan.is_empty() {
                    assert_eq!(d_solutions(&t, 1, th, de).unwrap(), scan);
                }
            }
        }
    }

    #[test]
    fn lp_equivalent_examples() {
        let t = tower(3, 1, 5);
        let thetas = valid_thetas(&t);
        let th = thetas[0];
        let same = lp_equivalent(&t, 1, th, 1, th).unwrap();
        assert!(same.equivalent && same.checked);
        assert_eq!(same.tau_exponent, Some(0));
        assert!(same.witness.unwrap().map.is_identity());
        assert!(!lp_equivalent(&t, 1, th, 2, th).unwrap().equivalent);
        let inv = lp_equivalent(&t, 1, th, 1, t.inv(th).unwrap()).unwrap();
        assert!(inv.equivalent && inv.checked);
        assert_eq!(inv.case, EquivCase::OddN);
        assert!(matches!(lp_equivalent(&t, 3, th, 1, th), Err(LpError::Unnormalized { .. })));
    }

    #[test]
    fn n4_cross_against_scan() {
        let t = tower(3, 1, 4);
        let thetas = valid_thetas(&t);
        for &th in thetas.iter().step_by(3) {
            for &de in thetas.iter().step_by(5) {
                let rep = n4_cross(&t, th, de).unwrap();
                let f = LinearizedPoly::lp(&t, &LPParams::new(&t, 1, th).unwrap());
                let g = LinearizedPoly::lp(&t, &LPParams::new(&t, 1, de).unwrap());
                let scan = CrossOracle::new(&t, &f, &g).unwrap().scan();
                assert!(rep.verified);
                assert_eq!(rep.c_solutions, scan);
                if rep.exists {
                    assert_eq!(scan.len() as u64, t.q() + 1);
                }
            }
        }
    }
}
