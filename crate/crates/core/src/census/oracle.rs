//! Independent counts behind the census: subfield enumeration for `F` and
//! `K`, orbit counting on exponents, and a PΓL partition of the point sets.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::check_census_input;
use crate::equiv::{brute_force_maps, normalized_s_values, BruteForceOptions};
use crate::error::{LpError, Result};
use crate::gf::numtheory::{checked_pow, divisors, pow_mod};
use crate::gf::FieldTower;
use crate::linpoly::{LPParams, LinearizedPoly};
use crate::linset::{points_of, ProjPoint};

/// Largest `p^r` enumerated by [`f_size_enumerated`] and [`k_size_enumerated`].
pub const ENUMERATION_CEILING: u64 = 1 << 16;

pub const DEFAULT_ORBIT_CEILING: u64 = 1 << 20;

fn small_field(p: u64, r: u32) -> Result<FieldTower> {
    let order = checked_pow(p, r as u64)?;
    if order > ENUMERATION_CEILING as u128 {
        return Err(LpError::CeilingExceeded {
            order: order.min(u64::MAX as u128) as u64,
            ceiling: ENUMERATION_CEILING,
        });
    }
    FieldTower::new(p, r, 1)
}

fn generic_elements(t: &FieldTower) -> impl Iterator<Item = crate::gf::FieldElement> + '_ {
    let proper: Vec<u32> = divisors(t.degree() as u64)
        .into_iter()
        .filter(|&d| d < t.degree() as u64)
        .map(|d| d as u32)
        .collect();
    t.elements().filter(move |&x| proper.iter().all(|&d| !t.in_subfield(x, d)))
}

/// `|F(r)|` by testing every element of F_{p^r} against its proper subfields.
pub fn f_size_enumerated(p: u64, r: u32) -> Result<u64> {
    let t = small_field(p, r)?;
    Ok(generic_elements(&t).count() as u64)
}

/// `|K(r)|` by testing `x^(p^k + 1) = 1` for every `x ∈ F(r)` and `k < r`.
pub fn k_size_enumerated(p: u64, r: u32) -> Result<u64> {
    let t = small_field(p, r)?;
    let one = t.one();
    Ok(generic_elements(&t)
        .filter(|&x| (0..r).any(|k| t.mul(t.frobenius(x, k as i64), x) == one))
        .count() as u64)
}

/// Orbits of `x ↦ x^(±p^k)` on `F*_{q^w}` minus the kernel of the norm to
/// F_q, with `w = 1` for odd `n` and `w = 2` for even `n`. Works on discrete
/// logs: `F*_{q^w}` is cyclic of order `M = q^w - 1`, the norm kernel is the
/// set of multiples of `q - 1`, and the action is multiplication by `±p^k`.
pub fn lambda_orbit_oracle(p: u64, r: u32, n: u32, ceiling: u64) -> Result<u64> {
    check_census_input(p, r, n)?;
    let w = if n % 2 == 1 { 1 } else { 2 };
    let order = checked_pow(p, (w * r) as u64)?;
    if order > ceiling as u128 {
        return Err(LpError::CeilingExceeded {
            order: order.min(u64::MAX as u128) as u64,
            ceiling,
        });
    }
    let m = order as u64 - 1;
    let q1 = checked_pow(p, r as u64)? as u64 - 1;
    let mut multipliers: Vec<u64> = (0..w * r).map(|k| pow_mod(p, k as u64, m)).collect();
    multipliers.extend(multipliers.clone().into_iter().map(|a| (m - a) % m));
    let mut seen = vec![false; m as usize];
    let mut orbits = 0;
    for e in 0..m {
        if seen[e as usize] || e % q1 == 0 {
            continue;
        }
        orbits += 1;
        for &a in &multipliers {
            seen[((e as u128 * a as u128) % m as u128) as usize] = true;
        }
    }
    Ok(orbits)
}

/// Number of PΓL(2, q^n)-orbits on the point sets `L_f`, `f = lp(s, θ)`,
/// over all valid `θ` and `1 <= s < n/2`, found by pairwise exhaustive search.
pub fn lambda_brute_force(p: u64, r: u32, n: u32, options: &BruteForceOptions) -> Result<u64> {
    check_census_input(p, r, n)?;
    let t = Arc::new(FieldTower::new(p, r, n)?);
    options.check(&t)?;
    let mut sets: BTreeSet<Vec<ProjPoint>> = BTreeSet::new();
    for s in normalized_s_values(n) {
        for theta in t.nonzero_elements() {
            let params = LPParams::new(&t, s, theta)?;
            if params.is_valid(&t) {
                let f = LinearizedPoly::lp(&t, &params);
                sets.insert(points_of(&f)?.points().collect());
            }
        }
    }
    let mut reps: Vec<Vec<ProjPoint>> = Vec::new();
    for set in sets {
        if !reps
            .iter()
            .any(|rep| !brute_force_maps(&t, &set, rep, options.mode, true).is_empty())
        {
            reps.push(set);
        }
    }
    Ok(reps.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{f_size, k_size};
    use num_bigint::BigInt;

    #[test]
    fn enumeration_matches_formulas() {
        for (p, r) in [(2, 1), (2, 4), (2, 6), (3, 1), (3, 2), (3, 4), (5, 2), (7, 2), (2, 12)] {
            assert_eq!(BigInt::from(f_size_enumerated(p, r).unwrap()), f_size(p, r), "F({p}, {r})");
            assert_eq!(BigInt::from(k_size_enumerated(p, r).unwrap()), k_size(p, r), "K({p}, {r})");
        }
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(lambda_orbit_oracle(5, 1, 3, DEFAULT_ORBIT_CEILING).unwrap(), 2);
        assert_eq!(lambda_orbit_oracle(3, 1, 4, DEFAULT_ORBIT_CEILING).unwrap(), 1);
        assert_eq!(lambda_orbit_oracle(2, 2, 3, DEFAULT_ORBIT_CEILING).unwrap(), 1);
        assert_eq!(lambda_orbit_oracle(2, 2, 4, DEFAULT_ORBIT_CEILING).unwrap(), 2);
        assert!(lambda_orbit_oracle(7, 4, 4, DEFAULT_ORBIT_CEILING).is_err());
    }

    #[test]
    fn brute_force_small() {
        let opts = BruteForceOptions::default();
        assert_eq!(lambda_brute_force(2, 2, 3, &opts).unwrap(), 1);
        assert_eq!(lambda_brute_force(3, 1, 4, &opts).unwrap(), 1);
    }
}
