//! The PΓL-automorphism group of an LP linear set.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::{check_lp_input, d_count_formula, d_solutions, exists_d, n4_cross};
use crate::error::{LpError, Result};
use crate::gf::{FieldElement, FieldTower};
use crate::linpoly::{LPParams, LinearizedPoly};
use crate::linset::{apply_map, points_of, SemilinearMap};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutGroup {
    pub elements: BTreeSet<SemilinearMap>,
    /// `(diag(1, d), τ)` with `d^(σ+1) = (θ/θ^τ)^σ`.
    pub d_part: BTreeSet<SemilinearMap>,
    /// `([[0, 1], [c, 0]], τ)`, only for `n = 4`.
    pub c_part: BTreeSet<SemilinearMap>,
    pub n_tau: u64,
    pub predicted_size: u64,
}

impl AutGroup {
    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

/// `#{τ ∈ Aut(F_{q^n}) : N(θ) ∈ {N(θ^τ), 1/N(θ^τ)}}`, with `N = N_{q^n/q}` for
/// odd `n` and `N_{q^n/q^2}` for even `n`.
pub fn n_tau(t: &FieldTower, theta: FieldElement) -> u64 {
    (0..t.degree())
        .filter(|&k| super::criterion_holds(t, theta, theta, k))
        .count() as u64
}

/// `N_τ`, `2N_τ`, `(q+1)N_τ` or `2(q+1)N_τ` according to `n` and `q`.
pub fn predicted_aut_size(q: u64, n: u32, n_tau: u64) -> u64 {
    let base = d_count_formula(q, n) * n_tau;
    if n == 4 {
        2 * base
    } else {
        base
    }
}

/// Builds `Aut(L_f)` for `f = lp(s, θ)`, checks that every element
/// stabilizes `L_f`, and compares the size with [`predicted_aut_size`].
pub fn automorphisms(tower: &Arc<FieldTower>, s: u32, theta: FieldElement) -> Result<AutGroup> {
    let t = &**tower;
    check_lp_input(t, s, theta)?;
    let mut d_part = BTreeSet::new();
    let mut c_part = BTreeSet::new();
    for k in 0..t.degree() {
        let theta_tau = t.frobenius(theta, k as i64);
        if exists_d(t, s, theta, theta_tau)? {
            for d in d_solutions(t, s, theta, theta_tau)? {
                d_part.insert(SemilinearMap::diagonal(t, d, k)?);
            }
        }
        if t.n() == 4 {
            for c in n4_cross(tower, theta_tau, theta)?.c_solutions {
                c_part.insert(SemilinearMap::antidiagonal(t, c, k)?);
            }
        }
    }
    let set = points_of(&LinearizedPoly::lp(tower, &LPParams::new(t, s, theta)?))?;
    let elements: BTreeSet<SemilinearMap> = d_part.union(&c_part).copied().collect();
    if let Some(bad) = elements.iter().find(|m| !apply_map(t, &set, m).same_points(&set)) {
        return Err(LpError::CheckFailed(format!("{bad} does not stabilize the linear set")));
    }
    let n_tau = n_tau(t, theta);
    let predicted_size = predicted_aut_size(t.q(), t.n(), n_tau);
    if elements.len() as u64 != predicted_size {
        return Err(LpError::AutSizeMismatch {
            expected: predicted_size,
            got: elements.len() as u64,
        });
    }
    Ok(AutGroup {
        elements,
        d_part,
        c_part,
        n_tau,
        predicted_size,
    })
}

/// Same as [`n_tau`] computed from class norms directly; kept for the tests.
#[cfg(test)]
fn n_tau_direct(t: &FieldTower, theta: FieldElement) -> u64 {
    let a = super::class_norm(t, theta);
    (0..t.degree())
        .filter(|&k| {
            let b = super::class_norm(t, t.frobenius(theta, k as i64));
            a == b || a == t.inv(b).unwrap()
        })
        .count() as u64
}
