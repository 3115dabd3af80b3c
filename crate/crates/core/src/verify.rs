//! Invariant sweeps over small fields. Each sweep returns one [`CheckRow`]
//! per cell with a count of checks and failures; the CLI prints them and the
//! acceptance suite asserts on them.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::census::{
    f_size, f_size_enumerated, k_size, k_size_enumerated, lambda_brute_force, lambda_closed, lambda_orbit_oracle,
    ENUMERATION_CEILING,
};
use crate::equiv::{
    automorphisms, brute_force_maps, AutGroup, brute_force_stabilizer, class_norm, d_count_formula, d_solutions, exists_d,
    exists_d_scan, lp_equivalent, n4_cross, no_cross_above_4, normalized_s_values, BruteForceOptions, CrossOracle,
};
use crate::error::{LpError, Result};
use crate::gf::numtheory::{is_prime, phi};
use crate::gf::{FieldElement, FieldTower};
use crate::linpoly::{norm_power_coefficient, norm_power_field_sum, LPParams, LinearizedPoly};
use crate::linset::{check_coefficient_identities, points_of, ProjPoint, SemilinearMap};

pub const SUITES: [&str; 8] = ["adjoint", "coeffs", "normpower", "equiv", "aut", "census", "bounds", "all"];

/// Knobs shared by every sweep.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random q-polynomials per field in the adjoint sweep.
    pub samples: usize,
    /// Largest `p^(rn)` swept by the field-wide suites.
    pub field_ceiling: u64,
    pub brute_force: BruteForceOptions,
    /// Largest `p^(wr)` for the orbit-oracle census sweep.
    pub orbit_ceiling: u64,
    /// `(p, r, n)` cells where the brute-force census runs.
    pub census_brute_cells: Vec<(u64, u32, u32)>,
    /// Sampled pairs per field for the `n > 4` cross-map scans.
    pub cross_samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0x5eed,
            samples: 200,
            field_ceiling: 1 << 12,
            brute_force: BruteForceOptions::default(),
            orbit_ceiling: 1 << 16,
            census_brute_cells: vec![(3, 1, 3), (2, 2, 3), (3, 1, 4), (5, 1, 3), (2, 2, 4)],
            cross_samples: 50,
        }
    }
}

/// Counts for one cell of one sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub suite: &'static str,
    pub check: &'static str,
    pub cell: String,
    pub checks: u64,
    pub failures: u64,
    /// Free-form detail such as pair counts.
    pub info: String,
    pub first_failure: Option<String>,
}

impl CheckRow {
    fn new(suite: &'static str, check: &'static str, cell: impl Into<String>) -> Self {
        CheckRow {
            suite,
            check,
            cell: cell.into(),
            checks: 0,
            failures: 0,
            info: String::new(),
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    fn error(&mut self, e: LpError) {
        self.record(false, || e.to_string());
    }

    fn info(mut self, info: impl Into<String>) -> Self {
        self.info = info.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub rows: Vec<CheckRow>,
}

impl SuiteReport {
    pub fn checks(&self) -> u64 {
        self.rows.iter().map(|r| r.checks).sum()
    }

    pub fn failures(&self) -> u64 {
        self.rows.iter().map(|r| r.failures).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }
}

pub fn run_suite(name: &str, config: &VerifyConfig) -> Result<SuiteReport> {
    let rows = match name {
        "adjoint" => [adjoint_sweep(config), norm_one_sweep(config)].concat(),
        "coeffs" => coefficient_sweep(config),
        "normpower" => normpower_sweep(&[(3, 1, 3), (2, 2, 3), (5, 1, 3), (3, 1, 4)]),
        "equiv" => [
            equiv_oracle_sweep(config, &[(3, 1, 3, false), (2, 2, 3, true), (5, 1, 3, true), (3, 1, 4, true)]),
            d_scan_sweep(&[(3, 1, 3), (3, 1, 4)]),
            d_count_sweep(config),
            cross_sweep(config),
        ]
        .concat(),
        "aut" => aut_sweep(config, &[(3, 1, 3), (2, 2, 3), (3, 1, 4)]),
        "census" => [
            fk_sweep(&[2, 3, 5, 7]),
            census_orbit_sweep(config, 3..=12),
            census_brute_sweep(config),
        ]
        .concat(),
        "bounds" => bounds_sweep(&[2, 3, 5, 7], 2..=10, &[3, 4, 5, 6]),
        "all" => {
            let mut rows = Vec::new();
            for s in SUITES.iter().filter(|s| **s != "all") {
                rows.extend(run_suite(s, config)?.rows);
            }
            rows
        }
        other => return Err(LpError::UnknownSuite(other.to_string())),
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        rows,
    })
}

fn cell(p: u64, r: u32, n: u32) -> String {
    format!("p={p} r={r} n={n}")
}

fn tower(p: u64, r: u32, n: u32) -> Result<Arc<FieldTower>> {
    Ok(Arc::new(FieldTower::new(p, r, n)?))
}

/// Every `(p, r, n)` with `p^(rn) <= ceiling` and `n >= min_n`, sorted.
pub fn small_fields(ceiling: u64, min_n: u32) -> Vec<(u64, u32, u32)> {
    let mut out = Vec::new();
    for p in (2..=ceiling).filter(|&p| is_prime(p)) {
        let mut degree = 1u32;
        while (p as u128).pow(degree) <= ceiling as u128 {
            for r in 1..=degree {
                if degree % r == 0 && degree / r >= min_n {
                    out.push((p, r, degree / r));
                }
            }
            degree += 1;
        }
    }
    out.sort();
    out
}

fn cell_rng(seed: u64, p: u64, r: u32, n: u32) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (p << 32) ^ ((r as u64) << 16) ^ n as u64)
}

/// Valid `(s, θ)` with `s` normalized.
fn valid_params(t: &FieldTower) -> Vec<LPParams> {
    let mut out = Vec::new();
    for s in normalized_s_values(t.n()) {
        for theta in t.nonzero_elements() {
            let params = LPParams::new(t, s, theta).expect("normalized s");
            if params.is_valid(t) {
                out.push(params);
            }
        }
    }
    out
}

fn point_list(t: &Arc<FieldTower>, params: &LPParams) -> Result<Vec<ProjPoint>> {
    Ok(points_of(&LinearizedPoly::lp(t, params))?.points().collect())
}

fn random_poly<R: Rng>(t: &Arc<FieldTower>, rng: &mut R) -> LinearizedPoly {
    let coeffs = (0..t.n()).map(|_| t.random(rng)).collect();
    LinearizedPoly::new(t, coeffs).expect("n coefficients")
}

/// `L_f = L_{f̂}` with equal value multisets and weights, for random `f`.
pub fn adjoint_sweep(config: &VerifyConfig) -> Vec<CheckRow> {
    small_fields(config.field_ceiling, 2)
        .into_par_iter()
        .map(|(p, r, n)| {
            let mut row = CheckRow::new("adjoint", "adjoint-multiset", cell(p, r, n));
            let t = match tower(p, r, n) {
                Ok(t) => t,
                Err(e) => {
                    row.error(e);
                    return row;
                }
            };
            let mut rng = cell_rng(config.seed, p, r, n);
            for _ in 0..config.samples {
                let f = random_poly(&t, &mut rng);
                let fa = f.adjoint();
                row.record(f.value_multiset() == fa.value_multiset(), || format!("value multiset of {f}"));
                match (points_of(&f), points_of(&fa)) {
                    (Ok(a), Ok(b)) => row.record(a.weights() == b.weights(), || format!("weights of {f}")),
                    (Err(e), _) | (_, Err(e)) => row.error(e),
                }
            }
            row.info(format!("polys={}", config.samples))
        })
        .collect()
}

/// Valid `θ` give maximum scattered sets; `N(θ) = 1` gives non-scattered ones.
pub fn norm_one_sweep(config: &VerifyConfig) -> Vec<CheckRow> {
    small_fields(config.field_ceiling, 3)
        .into_par_iter()
        .map(|(p, r, n)| {
            let mut row = CheckRow::new("adjoint", "norm-one", cell(p, r, n));
            let t = match tower(p, r, n) {
                Ok(t) => t,
                Err(e) => {
                    row.error(e);
                    return row;
                }
            };
            let bound = (t.order() - 1) / (t.q() - 1);
            let (mut valid, mut unit) = (0u64, 0u64);
            for s in normalized_s_values(n) {
                for theta in t.nonzero_elements() {
                    let params = LPParams::new(&t, s, theta).expect("normalized s");
                    let norm = t.norm_q(theta, 1).expect("1 divides n");
                    let is_valid = params.is_valid(&t);
                    if !is_valid && norm != FieldElement::ONE {
                        continue;
                    }
                    let set = match points_of(&LinearizedPoly::lp(&t, &params)) {
                        Ok(set) => set,
                        Err(e) => {
                            row.error(e);
                            continue;
                        }
                    };
                    if is_valid {
                        valid += 1;
                        row.record(set.is_scattered() && set.size() as u64 == bound, || {
                            format!("s={s} θ={theta} not maximum scattered")
                        });
                    } else {
                        unit += 1;
                        row.record(!set.is_scattered(), || format!("s={s} θ={theta} with N(θ)=1 is scattered"));
                    }
                }
            }
            row.info(format!("valid={valid} norm-one={unit}"))
        })
        .collect()
}

/// The coefficient identities on pairs with `L_f = L_g`: `f` against its
/// adjoint, and every pair of q-polynomials over F_27 with identical point
/// sets found by exhaustive grouping.
pub fn coefficient_sweep(config: &VerifyConfig) -> Vec<CheckRow> {
    let mut rows: Vec<CheckRow> = small_fields(config.field_ceiling.min(1 << 10), 2)
        .into_par_iter()
        .map(|(p, r, n)| {
            let mut row = CheckRow::new("coeffs", "adjoint-pairs", cell(p, r, n));
            let t = match tower(p, r, n) {
                Ok(t) => t,
                Err(e) => {
                    row.error(e);
                    return row;
                }
            };
            let mut rng = cell_rng(config.seed ^ 0xc0ef, p, r, n);
            for _ in 0..config.samples.min(50) {
                let f = random_poly(&t, &mut rng);
                match check_coefficient_identities(&f, &f.adjoint()) {
                    Ok(ids) => row.record(ids.all(), || format!("{f}: {ids:?}")),
                    Err(e) => row.error(e),
                }
            }
            row
        })
        .collect();
    rows.push(equal_set_pairs(3, 1, 3));
    rows
}

fn equal_set_pairs(p: u64, r: u32, n: u32) -> CheckRow {
    let mut row = CheckRow::new("coeffs", "equal-set-pairs", cell(p, r, n));
    let t = match tower(p, r, n) {
        Ok(t) => t,
        Err(e) => {
            row.error(e);
            return row;
        }
    };
    let elems: Vec<FieldElement> = t.elements().collect();
    let mut groups: BTreeMap<Vec<ProjPoint>, Vec<LinearizedPoly>> = BTreeMap::new();
    let total = elems.len().pow(n);
    for mut idx in 0..total {
        let coeffs = (0..n)
            .map(|_| {
                let c = elems[idx % elems.len()];
                idx /= elems.len();
                c
            })
            .collect();
        let f = LinearizedPoly::new(&t, coeffs).expect("n coefficients");
        match points_of(&f) {
            Ok(set) => groups.entry(set.points().collect()).or_default().push(f),
            Err(e) => row.error(e),
        }
    }
    let mut pairs = 0u64;
    for members in groups.values() {
        for g in &members[1..] {
            pairs += 1;
            match check_coefficient_identities(&members[0], g) {
                Ok(ids) => row.record(ids.all(), || format!("{} vs {g}: {ids:?}", members[0])),
                Err(e) => row.error(e),
            }
        }
    }
    row.info(format!("polys={total} point-sets={} pairs={pairs}", groups.len()))
}

/// Closed-form coefficient against the field sum, every θ.
pub fn normpower_sweep(cells: &[(u64, u32, u32)]) -> Vec<CheckRow> {
    cells
        .par_iter()
        .map(|&(p, r, n)| {
            let mut row = CheckRow::new("normpower", "norm-power", cell(p, r, n));
            let t = match tower(p, r, n) {
                Ok(t) => t,
                Err(e) => {
                    row.error(e);
                    return row;
                }
            };
            for s in normalized_s_values(n) {
                for theta in t.elements() {
                    let params = LPParams::new(&t, s, theta).expect("normalized s");
                    match norm_power_coefficient(&t, &params) {
                        Ok(c) => row.record(c == norm_power_field_sum(&t, &params), || format!("s={s} θ={theta}")),
                        Err(e) => row.error(e),
                    }
                }
            }
            row
        })
        .collect()
}

/// `lp_equivalent` against the exhaustive PΓL search. With `bucketed`, each
/// valid `θ` is compared with one representative per norm class instead of
/// with every other `θ`.
pub fn equiv_oracle_sweep(config: &VerifyConfig, cells: &[(u64, u32, u32, bool)]) -> Vec<CheckRow> {
    cells
        .iter()
        .map(|&(p, r, n, bucketed)| {
            let label = if bucketed { "oracle-bucketed" } else { "oracle-all-pairs" };
            let mut row = CheckRow::new("equiv", label, cell(p, r, n));
            if let Err(e) = equiv_cell(config, p, r, n, bucketed, &mut row) {
                row.error(e);
            }
            row
        })
        .collect()
}

fn equiv_cell(config: &VerifyConfig, p: u64, r: u32, n: u32, bucketed: bool, row: &mut CheckRow) -> Result<()> {
    let t = tower(p, r, n)?;
    config.brute_force.check(&t)?;
    let params = valid_params(&t);
    let sets: Vec<Vec<ProjPoint>> = params.iter().map(|pr| point_list(&t, pr)).collect::<Result<_>>()?;
    let targets: Vec<usize> = if bucketed {
        let mut seen = BTreeMap::new();
        for (i, pr) in params.iter().enumerate() {
            seen.entry((pr.s, class_norm(&t, pr.theta))).or_insert(i);
        }
        seen.into_values().collect()
    } else {
        (0..params.len()).collect()
    };
    let results: Vec<Result<(bool, bool, bool)>> = (0..params.len())
        .into_par_iter()
        .flat_map_iter(|i| targets.iter().map(move |&j| (i, j)))
        .map(|(i, j)| {
            let (a, b) = (params[i], params[j]);
            let verdict = lp_equivalent(&t, a.s, a.theta, b.s, b.theta)?;
            let brute = !brute_force_maps(&t, &sets[i], &sets[j], config.brute_force.mode, true).is_empty();
            Ok((verdict.equivalent, brute, !verdict.equivalent || verdict.checked))
        })
        .collect();
    let (mut pairs, mut equivalent) = (0u64, 0u64);
    for (k, res) in results.into_iter().enumerate() {
        let (i, j) = (k / targets.len(), targets[k % targets.len()]);
        let (closed, brute, checked) = res?;
        pairs += 1;
        equivalent += brute as u64;
        let (a, b) = (params[i], params[j]);
        row.record(closed == brute, || {
            format!(
                "(s={}, θ={}) vs (s={}, θ={}): closed form {closed}, exhaustive {brute}",
                a.s, a.theta, b.s, b.theta
            )
        });
        row.record(checked, || format!("witness for θ={} → δ={} failed its check", a.theta, b.theta));
    }
    row.info = format!("thetas={} targets={} pairs={pairs} equivalent={equivalent}", params.len(), targets.len());
    Ok(())
}

/// The twisted existence test for `d` against a scan over all `d`.
pub fn d_scan_sweep(cells: &[(u64, u32, u32)]) -> Vec<CheckRow> {
    cells
        .iter()
        .map(|&(p, r, n)| {
            let mut row = CheckRow::new("equiv", "d-existence-scan", cell(p, r, n));
            let run = |row: &mut CheckRow| -> Result<()> {
                let t = tower(p, r, n)?;
                let params = valid_params(&t);
                let results: Vec<Result<(bool, bool)>> = params
                    .par_iter()
                    .flat_map_iter(|a| params.iter().filter(move |b| b.s == a.s).map(move |b| (a, b)))
                    .map(|(a, b)| Ok((exists_d(&t, a.s, a.theta, b.theta)?, exists_d_scan(&t, a.s, a.theta, b.theta)?)))
                    .collect();
                for res in results {
                    let (formula, scan) = res?;
                    row.record(formula == scan, || format!("formula {formula}, scan {scan}"));
                }
                Ok(())
            };
            if let Err(e) = run(&mut row) {
                row.error(e);
            }
            row
        })
        .collect()
}

/// `|d_solutions(s, θ, θ)| = gcd(q^s + 1, q^n - 1)` in its three-row form.
pub fn d_count_sweep(config: &VerifyConfig) -> Vec<CheckRow> {
    small_fields(config.field_ceiling, 3)
        .into_par_iter()
        .filter(|&(p, r, _)| !(p == 2 && r == 1))
        .map(|(p, r, n)| {
            let mut row = CheckRow::new("equiv", "d-count", cell(p, r, n));
            let t = match tower(p, r, n) {
                Ok(t) => t,
                Err(e) => {
                    row.error(e);
                    return row;
                }
            };
            let expected = d_count_formula(t.q(), n);
            let step = (t.order() / 40).max(1) as usize;
            for s in normalized_s_values(n) {
                for theta in t.nonzero_elements().step_by(step) {
                    match d_solutions(&t, s, theta, theta) {
                        Ok(ds) => row.record(ds.len() as u64 == expected, || {
                            format!("s={s} θ={theta}: {} solutions, expected {expected}", ds.len())
                        }),
                        Err(e) => row.error(e),
                    }
                }
            }
            row.info(format!("expected={expected}"))
        })
        .collect()
}

/// The `n = 4` cross-map criterion against a scan over all `c`, and the
/// `n > 4` scans that must find no `c`.
pub fn cross_sweep(config: &VerifyConfig) -> Vec<CheckRow> {
    let mut rows = vec![cross_n4(3, 1)];
    for (p, r, n) in [(2, 1, 5), (3, 1, 5), (2, 2, 5), (5, 1, 5), (3, 1, 6)] {
        rows.push(cross_above_4(config, p, r, n));
    }
    rows
}

fn cross_n4(p: u64, r: u32) -> CheckRow {
    let mut row = CheckRow::new("equiv", "cross-n4", cell(p, r, 4));
    let run = |row: &mut CheckRow| -> Result<()> {
        let t = tower(p, r, 4)?;
        let thetas: Vec<FieldElement> = valid_params(&t).into_iter().map(|pr| pr.theta).collect();
        let polys: Vec<LinearizedPoly> = thetas
            .iter()
            .map(|&th| Ok(LinearizedPoly::lp(&t, &LPParams::new(&t, 1, th)?)))
            .collect::<Result<_>>()?;
        let mut nonempty = 0u64;
        for (i, &th) in thetas.iter().enumerate() {
            for (j, &de) in thetas.iter().enumerate() {
                let rep = n4_cross(&t, th, de)?;
                let scan = CrossOracle::new(&t, &polys[i], &polys[j])?.scan();
                nonempty += !scan.is_empty() as u64;
                row.record(rep.exists == !scan.is_empty(), || {
                    format!("θ={th} δ={de}: criterion {}, scan found {}", rep.exists, scan.len())
                });
                row.record(rep.c_solutions == scan, || format!("θ={th} δ={de}: c lists differ"));
                if !scan.is_empty() {
                    row.record(scan.len() as u64 == t.q() + 1, || {
                        format!("θ={th} δ={de}: {} values of c", scan.len())
                    });
                }
            }
        }
        row.info = format!("pairs={} with-c={nonempty}", thetas.len() * thetas.len());
        Ok(())
    };
    if let Err(e) = run(&mut row) {
        row.error(e);
    }
    row
}

fn cross_above_4(config: &VerifyConfig, p: u64, r: u32, n: u32) -> CheckRow {
    let mut row = CheckRow::new("equiv", "cross-above-4", cell(p, r, n));
    let run = |row: &mut CheckRow| -> Result<()> {
        let t = tower(p, r, n)?;
        let params = valid_params(&t);
        let bijective: Vec<&LPParams> = params
            .iter()
            .filter(|pr| LinearizedPoly::lp(&t, pr).is_bijective())
            .collect();
        if bijective.is_empty() {
            row.info = "vacuous: no valid θ with f bijective".to_string();
            return Ok(());
        }
        let mut rng = cell_rng(config.seed ^ 0xc055, p, r, n);
        for _ in 0..config.cross_samples {
            let a = bijective[rng.gen_range(0..bijective.len())];
            let b = &params[rng.gen_range(0..params.len())];
            let f = LinearizedPoly::lp(&t, a);
            let g = LinearizedPoly::lp(&t, b);
            row.record(no_cross_above_4(&f, &g)?, || format!("θ={} δ={} admit a cross map", a.theta, b.theta));
        }
        row.info = format!("pairs={}", config.cross_samples);
        Ok(())
    };
    if let Err(e) = run(&mut row) {
        row.error(e);
    }
    row
}

/// The constructed automorphism group against the brute-force stabilizer.
pub fn aut_sweep(config: &VerifyConfig, cells: &[(u64, u32, u32)]) -> Vec<CheckRow> {
    cells
        .iter()
        .map(|&(p, r, n)| {
            let mut row = CheckRow::new("aut", "stabilizer", cell(p, r, n));
            let run = |row: &mut CheckRow| -> Result<()> {
                let t = tower(p, r, n)?;
                config.brute_force.check(&t)?;
                let params = valid_params(&t);
                type Item = (LPParams, BTreeSet<SemilinearMap>, Result<AutGroup>);
                let results: Vec<Result<Item>> = params
                    .par_iter()
                    .map(|pr| {
                        let f = LinearizedPoly::lp(&t, pr);
                        let stab_set = brute_force_stabilizer(&f, &config.brute_force)?.into_iter().collect();
                        Ok((*pr, stab_set, automorphisms(&t, pr.s, pr.theta)))
                    })
                    .collect();
                let mut sizes = BTreeMap::new();
                for res in results {
                    let (pr, stab, group) = res?;
                    let stab_len = stab.len();
                    *sizes.entry(stab_len).or_insert(0u64) += 1;
                    match group {
                        Ok(g) => {
                            row.record(g.elements == stab, || {
                                format!(
                                    "θ={}: constructed {} elements, stabilizer {stab_len} (formula {})",
                                    pr.theta,
                                    g.size(),
                                    g.predicted_size
                                )
                            });
                            row.record(g.size() as u64 == g.predicted_size, || {
                                format!("θ={}: size {} vs formula {}", pr.theta, g.size(), g.predicted_size)
                            });
                        }
                        Err(e) => row.record(false, || format!("θ={}: {e}", pr.theta)),
                    }
                }
                let sizes: Vec<String> = sizes.iter().map(|(k, v)| format!("{k}x{v}")).collect();
                row.info = format!("thetas={} stabilizer-sizes={}", params.len(), sizes.join(","));
                Ok(())
            };
            if let Err(e) = run(&mut row) {
                row.error(e);
            }
            row
        })
        .collect()
}

/// `|F(r)|` and `|K(r)|` against enumeration for `p^r <= 2^16`.
pub fn fk_sweep(primes: &[u64]) -> Vec<CheckRow> {
    primes
        .iter()
        .map(|&p| {
            let mut row = CheckRow::new("census", "f-k-enumeration", format!("p={p}"));
            let mut r = 1u32;
            while (p as u128).pow(r) <= ENUMERATION_CEILING as u128 {
                match (f_size_enumerated(p, r), k_size_enumerated(p, r)) {
                    (Ok(f), Ok(k)) => {
                        row.record(BigInt::from(f) == f_size(p, r), || format!("F({r}): {f} vs {}", f_size(p, r)));
                        row.record(BigInt::from(k) == k_size(p, r), || format!("K({r}): {k} vs {}", k_size(p, r)));
                    }
                    (Err(e), _) | (_, Err(e)) => row.error(e),
                }
                r += 1;
            }
            row.info(format!("r<={}", r - 1))
        })
        .collect()
}

/// `lambda_closed = orbits · φ(n)/2` for every prime `p` and `r` with
/// `p^(wr)` under the orbit ceiling. The orbit count depends only on
/// `(p, r, w)`, so it is computed once and compared for every `n`.
pub fn census_orbit_sweep(config: &VerifyConfig, ns: std::ops::RangeInclusive<u32>) -> Vec<CheckRow> {
    let ns: Vec<u32> = ns.collect();
    let mut rows = Vec::new();
    for w in [1u32, 2] {
        let cells: Vec<(u64, u32)> = (2..=config.orbit_ceiling)
            .filter(|&p| is_prime(p))
            .flat_map(|p| {
                (1u32..)
                    .take_while(move |&r| (p as u128).pow(w * r) <= config.orbit_ceiling as u128)
                    .map(move |r| (p, r))
            })
            .filter(|&(p, r)| !(p == 2 && r == 1))
            .collect();
        let mut by_r: BTreeMap<u32, CheckRow> = BTreeMap::new();
        let results: Vec<(u64, u32, Result<Vec<(u32, BigInt, BigInt)>>)> = cells
            .par_iter()
            .map(|&(p, r)| {
                let run = || -> Result<Vec<(u32, BigInt, BigInt)>> {
                    let n0 = ns.iter().copied().find(|n| n % 2 == w % 2).expect("some n of each parity");
                    let orbits = lambda_orbit_oracle(p, r, n0, config.orbit_ceiling)?;
                    ns.iter()
                        .filter(|n| (*n % 2 == 1) == (w == 1))
                        .map(|&n| {
                            let closed = lambda_closed_plain(p, r, n)?;
                            Ok((n, closed, BigInt::from(orbits) * phi(n as u64) / 2))
                        })
                        .collect()
                };
                (p, r, run())
            })
            .collect();
        for (p, r, res) in results {
            let row = by_r.entry(r).or_insert_with(|| {
                let parity = if w == 1 { "odd" } else { "even" };
                CheckRow::new("census", "orbit-oracle", format!("r={r} n {parity}"))
            });
            match res {
                Ok(list) => {
                    for (n, closed, oracle) in list {
                        row.record(closed == oracle, || {
                            format!("p={p} r={r} n={n}: closed {closed}, orbits·φ(n)/2 = {oracle}")
                        });
                    }
                }
                Err(e) => row.error(e),
            }
        }
        for (r, mut row) in by_r {
            let primes = cells.iter().filter(|c| c.1 == r).count();
            row.info = format!("primes={primes}");
            rows.push(row);
        }
    }
    rows
}

/// Λ without bounds or notes, for sweeps that only need the number.
fn lambda_closed_plain(p: u64, r: u32, n: u32) -> Result<BigInt> {
    Ok(lambda_closed(p, r, n)?.lambda)
}

/// `lambda_closed` against the brute-force partition and the orbit oracle.
pub fn census_brute_sweep(config: &VerifyConfig) -> Vec<CheckRow> {
    config
        .census_brute_cells
        .iter()
        .map(|&(p, r, n)| {
            let mut row = CheckRow::new("census", "brute-force", cell(p, r, n));
            let run = |row: &mut CheckRow| -> Result<()> {
                let closed = lambda_closed_plain(p, r, n)?;
                let orbit = BigInt::from(lambda_orbit_oracle(p, r, n, config.orbit_ceiling)?) * phi(n as u64) / 2;
                let brute = BigInt::from(lambda_brute_force(p, r, n, &config.brute_force)?);
                row.record(closed == orbit, || format!("closed {closed}, orbit {orbit}"));
                row.record(closed == brute, || format!("closed {closed}, brute force {brute}"));
                row.info = format!("closed={closed} orbit={orbit} brute={brute}");
                Ok(())
            };
            if let Err(e) = run(&mut row) {
                row.error(e);
            }
            row
        })
        .collect()
}

/// Strict bounds on `Λ/(φ(n)/2) - ε`, one row per `(p, n)`.
pub fn bounds_sweep(primes: &[u64], rs: std::ops::RangeInclusive<u32>, ns: &[u32]) -> Vec<CheckRow> {
    let cells: Vec<(u64, u32)> = primes.iter().flat_map(|&p| ns.iter().map(move |&n| (p, n))).collect();
    cells
        .par_iter()
        .map(|&(p, n)| {
            let mut row = CheckRow::new("bounds", "sandwich", format!("p={p} n={n}"));
            let mut equal = Vec::new();
            for r in rs.clone() {
                match lambda_closed(p, r, n) {
                    Ok(rep) => {
                        let b = rep.bounds.expect("r > 1");
                        if b.lower_side == crate::census::Side::Equal {
                            equal.push(r.to_string());
                        }
                        row.record(b.holds(), || {
                            format!(
                                "r={r}: lower {} ({:?}) value {} upper {} ({:?})",
                                b.lower, b.lower_side, b.value, b.upper, b.upper_side
                            )
                        });
                    }
                    Err(e) => row.error(e),
                }
            }
            if !equal.is_empty() {
                row.info = format!("lower-equality at r={}", equal.join(","));
            }
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_field_listing() {
        let fields = small_fields(27, 3);
        assert_eq!(fields, vec![(2, 1, 3), (2, 1, 4), (3, 1, 3)]);
        assert!(small_fields(4096, 2).contains(&(2, 6, 2)));
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(
            run_suite("nope", &VerifyConfig::default()),
            Err(LpError::UnknownSuite(_))
        ));
    }

    #[test]
    fn tiny_sweeps_pass() {
        let config = VerifyConfig {
            samples: 5,
            field_ceiling: 64,
            ..VerifyConfig::default()
        };
        for row in adjoint_sweep(&config)
            .into_iter()
            .chain(norm_one_sweep(&config))
            .chain(normpower_sweep(&[(3, 1, 3)]))
            .chain(bounds_sweep(&[3], 2..=4, &[4]))
        {
            assert!(row.passed(), "{row:?}");
        }
    }
}
