//! Exhaustive PΓL(2, q^n) oracles.
//!
//! `Full` walks every normalized matrix for every field automorphism.
//! `Frame` uses sharp 3-transitivity: a map is fixed by where it sends three
//! points of the source set, so only ordered triples of target points are
//! tried. After moving the three source images to `∞, 0, 1` and the first
//! target point to `∞`, each candidate is an affine map `u ↦ λu + w`, which
//! makes the membership test a multiply, an add and a table lookup. Both
//! modes visit every map that can send the source onto the target, so they
//! return the same sets.

use serde::Serialize;

use crate::error::{LpError, Result};
use crate::gf::{FieldElement, FieldTower};
use crate::linpoly::LinearizedPoly;
use crate::linset::{points_of, ProjPoint, SemilinearMap};

pub const DEFAULT_BRUTE_FORCE_CEILING: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BruteForceMode {
    #[default]
    Frame,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceOptions {
    pub mode: BruteForceMode,
    /// Largest field order `p^(rn)` accepted.
    pub ceiling: u64,
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        BruteForceOptions {
            mode: BruteForceMode::Frame,
            ceiling: DEFAULT_BRUTE_FORCE_CEILING,
        }
    }
}

impl BruteForceOptions {
    pub fn full() -> Self {
        BruteForceOptions {
            mode: BruteForceMode::Full,
            ..Self::default()
        }
    }

    pub(crate) fn check(&self, t: &FieldTower) -> Result<()> {
        if t.order() > self.ceiling {
            Err(LpError::CeilingExceeded {
                order: t.order(),
                ceiling: self.ceiling,
            })
        } else {
            Ok(())
        }
    }
}

type Mat = [FieldElement; 4];

fn mat_mul(t: &FieldTower, x: &Mat, y: &Mat) -> Mat {
    let [a, b, c, d] = *x;
    let [e, f, g, h] = *y;
    [
        t.add(t.mul(a, e), t.mul(b, g)),
        t.add(t.mul(a, f), t.mul(b, h)),
        t.add(t.mul(c, e), t.mul(d, g)),
        t.add(t.mul(c, f), t.mul(d, h)),
    ]
}

/// Inverse up to the scalar `det`.
fn mat_adj(t: &FieldTower, x: &Mat) -> Mat {
    let [a, b, c, d] = *x;
    [d, t.neg(b), t.neg(c), a]
}

fn mat_apply(t: &FieldTower, m: &Mat, p: &ProjPoint) -> ProjPoint {
    let [a, b, c, d] = *m;
    let (x, y) = (p.x(), p.y());
    ProjPoint::normalized(t, t.add(t.mul(a, x), t.mul(b, y)), t.add(t.mul(c, x), t.mul(d, y)))
        .expect("nonsingular matrix")
}

fn index(t: &FieldTower, p: &ProjPoint) -> usize {
    match p.slope() {
        Some(m) => m.encoding() as usize,
        None => t.order() as usize,
    }
}

fn frob_point(t: &FieldTower, p: &ProjPoint, k: u32) -> ProjPoint {
    match p.slope() {
        Some(m) => ProjPoint::from_slope(t.frobenius(m, k as i64)),
        None => ProjPoint::INFINITY,
    }
}

/// Search order: Frobenius exponent, then matrices with `a = 1` before
/// `a = 0`, then entry encodings. The identity is the first candidate.
pub(crate) fn search_key(m: &SemilinearMap) -> (u32, bool, Mat) {
    (m.frobenius_exponent(), m.matrix()[0].is_zero(), m.matrix())
}

/// All `φ` with `φ(source) = target` as point sets, in search order;
/// with `first_only` just the least one.
pub fn brute_force_maps(
    t: &FieldTower,
    source: &[ProjPoint],
    target: &[ProjPoint],
    mode: BruteForceMode,
    first_only: bool,
) -> Vec<SemilinearMap> {
    if source.len() != target.len() {
        return Vec::new();
    }
    let mut mask = vec![false; t.order() as usize + 1];
    for p in target {
        mask[index(t, p)] = true;
    }
    let mut found = Vec::new();
    for k in 0..t.degree() {
        let images: Vec<ProjPoint> = source.iter().map(|p| frob_point(t, p, k)).collect();
        let mut level = if mode == BruteForceMode::Full || images.len() < 3 {
            full_level(t, &images, &mask, k, first_only)
        } else {
            frame_level(t, &images, target, k)
        };
        level.sort_by_key(search_key);
        level.dedup();
        if first_only && !level.is_empty() {
            return vec![level[0]];
        }
        found.extend(level);
    }
    found
}

fn full_level(t: &FieldTower, images: &[ProjPoint], mask: &[bool], k: u32, first_only: bool) -> Vec<SemilinearMap> {
    let mut out = Vec::new();
    let one = FieldElement::ONE;
    let zero = FieldElement::ZERO;
    let heads = [(one, zero), (zero, one)];
    for (a, b_fixed) in heads {
        let bs: Vec<FieldElement> = if a.is_zero() { vec![b_fixed] } else { t.elements().collect() };
        for &b in &bs {
            for c in t.elements() {
                for d in t.elements() {
                    let m = if a.is_zero() { [zero, one, c, d] } else { [one, b, c, d] };
                    if t.sub(t.mul(m[0], m[3]), t.mul(m[1], m[2])).is_zero() {
                        continue;
                    }
                    if images.iter().all(|p| mask[index(t, &mat_apply(t, &m, p))]) {
                        out.push(SemilinearMap::from_normalized(m, k));
                        if first_only {
                            return out;
                        }
                    }
                }
            }
        }
    }
    out
}

/// Matrix sending `v0 ↦ ∞`, `v1 ↦ 0`, `v2 ↦ 1`.
fn frame_matrix(t: &FieldTower, v0: &ProjPoint, v1: &ProjPoint, v2: &ProjPoint) -> Mat {
    let k = [v1.x(), v0.x(), v1.y(), v0.y()];
    let kinv = mat_adj(t, &k);
    let det = t.sub(t.mul(k[0], k[3]), t.mul(k[1], k[2]));
    let dinv = t.inv_nonzero(det);
    let alpha = t.mul(dinv, t.add(t.mul(kinv[0], v2.x()), t.mul(kinv[1], v2.y())));
    let beta = t.mul(dinv, t.add(t.mul(kinv[2], v2.x()), t.mul(kinv[3], v2.y())));
    let scaled = [
        t.mul(alpha, v1.x()),
        t.mul(beta, v0.x()),
        t.mul(alpha, v1.y()),
        t.mul(beta, v0.y()),
    ];
    mat_adj(t, &scaled)
}

fn frame_level(t: &FieldTower, images: &[ProjPoint], target: &[ProjPoint], k: u32) -> Vec<SemilinearMap> {
    let b = frame_matrix(t, &images[0], &images[1], &images[2]);
    let rest: Vec<FieldElement> = images[3..]
        .iter()
        .map(|p| mat_apply(t, &b, p).slope().expect("only the first frame point goes to infinity"))
        .collect();
    let q = t.order() as usize;
    let mut out = Vec::new();
    let mut cmask = vec![false; q];
    for q0 in target {
        let c = match q0.slope() {
            Some(m0) => [t.neg(m0), FieldElement::ONE, FieldElement::ONE, FieldElement::ZERO],
            None => [FieldElement::ONE, FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE],
        };
        let zs: Vec<FieldElement> = target
            .iter()
            .filter(|p| *p != q0)
            .map(|p| mat_apply(t, &c, p).slope().expect("only q0 goes to infinity"))
            .collect();
        cmask.iter_mut().for_each(|v| *v = false);
        for z in &zs {
            cmask[z.encoding() as usize] = true;
        }
        let cinv = mat_adj(t, &c);
        for &w in &zs {
            for &z2 in &zs {
                if z2 == w {
                    continue;
                }
                let lambda = t.sub(z2, w);
                if rest
                    .iter()
                    .all(|&u| cmask[t.add(t.mul(lambda, u), w).encoding() as usize])
                {
                    let a = [FieldElement::ONE, FieldElement::ZERO, w, lambda];
                    let m = mat_mul(t, &cinv, &mat_mul(t, &a, &b));
                    out.push(SemilinearMap::normalized(t, m, k).expect("product of nonsingular matrices"));
                }
            }
        }
    }
    out
}

fn point_list(f: &LinearizedPoly) -> Result<Vec<ProjPoint>> {
    Ok(points_of(f)?.points().collect())
}

/// The first `φ` in search order with `L_f^φ = L_g`.
pub fn brute_force_equivalent(
    f: &LinearizedPoly,
    g: &LinearizedPoly,
    options: &BruteForceOptions,
) -> Result<Option<SemilinearMap>> {
    if f.tower() != g.tower() {
        return Err(LpError::CrossTower);
    }
    let t = f.tower();
    options.check(t)?;
    let maps = brute_force_maps(t, &point_list(f)?, &point_list(g)?, options.mode, true);
    Ok(maps.into_iter().next())
}

/// Every `φ` with `L_f^φ = L_f`.
pub fn brute_force_stabilizer(f: &LinearizedPoly, options: &BruteForceOptions) -> Result<Vec<SemilinearMap>> {
    let t = f.tower();
    options.check(t)?;
    let pts = point_list(f)?;
    Ok(brute_force_maps(t, &pts, &pts, options.mode, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linpoly::LPParams;
    use crate::linset::apply_map;
    use std::collections::BTreeSet;
    use std::sync::Arc;

    fn lp(t: &Arc<FieldTower>, theta: FieldElement) -> LinearizedPoly {
        LinearizedPoly::lp(t, &LPParams::new(t, 1, theta).unwrap())
    }

    #[test]
    fn frame_matrix_sends_frame() {
        let t = FieldTower::new(5, 1, 2).unwrap();
        let v0 = ProjPoint::from_slope(t.gen_pow(3));
        let v1 = ProjPoint::INFINITY;
        let v2 = ProjPoint::from_slope(FieldElement::ZERO);
        let b = frame_matrix(&t, &v0, &v1, &v2);
        assert_eq!(mat_apply(&t, &b, &v0), ProjPoint::INFINITY);
        assert_eq!(mat_apply(&t, &b, &v1), ProjPoint::from_slope(FieldElement::ZERO));
        assert_eq!(mat_apply(&t, &b, &v2), ProjPoint::from_slope(FieldElement::ONE));
    }

    #[test]
    fn identity_and_adjoint() {
        let t = Arc::new(FieldTower::new(3, 1, 3).unwrap());
        let f = LinearizedPoly::new(&t, vec![t.gen_pow(2), t.gen_pow(5), FieldElement::ZERO]).unwrap();
        let opts = BruteForceOptions::default();
        assert!(brute_force_equivalent(&f, &f, &opts).unwrap().unwrap().is_identity());
        let phi = brute_force_equivalent(&f, &f.adjoint(), &opts).unwrap().unwrap();
        assert!(phi.is_identity());
    }

    #[test]
    fn modes_agree_on_stabilizers_and_witnesses() {
        let t = Arc::new(FieldTower::new(3, 1, 3).unwrap());
        let thetas: Vec<_> = t
            .nonzero_elements()
            .filter(|&x| LPParams::new(&t, 1, x).unwrap().is_valid(&t))
            .collect();
        let frame = BruteForceOptions::default();
        let full = BruteForceOptions::full();
        for &th in thetas.iter().take(3) {
            let f = lp(&t, th);
            let a: BTreeSet<_> = brute_force_stabilizer(&f, &frame).unwrap().into_iter().collect();
            let b: BTreeSet<_> = brute_force_stabilizer(&f, &full).unwrap().into_iter().collect();
            assert_eq!(a, b);
            assert!(a.contains(&SemilinearMap::identity()));
            for &de in thetas.iter().step_by(4) {
                let g = lp(&t, de);
                let x = brute_force_equivalent(&f, &g, &frame).unwrap();
                let y = brute_force_equivalent(&f, &g, &full).unwrap();
                assert_eq!(x, y);
                if let Some(phi) = x {
                    let image = apply_map(&t, &points_of(&f).unwrap(), &phi);
                    assert!(image.same_points(&points_of(&g).unwrap()));
                }
            }
        }
    }

    #[test]
    fn stabilizer_is_a_group() {
        let t = Arc::new(FieldTower::new(2, 2, 3).unwrap());
        let th = t
            .nonzero_elements()
            .find(|&x| LPParams::new(&t, 1, x).unwrap().is_valid(&t))
            .unwrap();
        let stab: BTreeSet<_> = brute_force_stabilizer(&lp(&t, th), &BruteForceOptions::default())
            .unwrap()
            .into_iter()
            .collect();
        for a in &stab {
            assert!(stab.contains(&a.inverse(&t)));
            for b in &stab {
                assert!(stab.contains(&a.compose(&t, b)));
            }
        }
    }

    #[test]
    fn ceiling_enforced() {
        let t = Arc::new(FieldTower::new(2, 1, 13).unwrap());
        let f = LinearizedPoly::identity(&t);
        assert!(matches!(
            brute_force_stabilizer(&f, &BruteForceOptions::default()),
            Err(LpError::CeilingExceeded { .. })
        ));
    }
}
