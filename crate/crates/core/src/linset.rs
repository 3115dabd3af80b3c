//! Linear sets on PG(1, q^n) and the action of PΓL(2, q^n) on them.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{LpError, Result};
use crate::gf::{FieldElement, FieldTower};
use crate::linpoly::LinearizedPoly;

/// A point `⟨(x, y)⟩`, stored with its first nonzero coordinate equal to 1.
/// Ordering is lexicographic on the encoded pair.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint {
    x: FieldElement,
    y: FieldElement,
}

impl ProjPoint {
    /// `⟨(0, 1)⟩`.
    pub const INFINITY: ProjPoint = ProjPoint {
        x: FieldElement::ZERO,
        y: FieldElement::ONE,
    };

    pub fn new(tower: &FieldTower, x: FieldElement, y: FieldElement) -> Result<Self> {
        if !tower.contains(x) || !tower.contains(y) {
            return Err(LpError::BadEncoding {
                value: x.encoding().max(y.encoding()),
                order: tower.order(),
            });
        }
        Self::normalized(tower, x, y).ok_or(LpError::Precondition("point coordinates not both zero"))
    }

    pub(crate) fn normalized(tower: &FieldTower, x: FieldElement, y: FieldElement) -> Option<Self> {
        if !x.is_zero() {
            Some(Self::from_slope(tower.mul(y, tower.inv_nonzero(x))))
        } else if !y.is_zero() {
            Some(Self::INFINITY)
        } else {
            None
        }
    }

    /// `⟨(1, m)⟩`.
    pub fn from_slope(m: FieldElement) -> Self {
        ProjPoint {
            x: FieldElement::ONE,
            y: m,
        }
    }

    pub fn x(&self) -> FieldElement {
        self.x
    }

    pub fn y(&self) -> FieldElement {
        self.y
    }

    /// `y/x`, or `None` at infinity.
    pub fn slope(&self) -> Option<FieldElement> {
        (!self.x.is_zero()).then_some(self.y)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.x, self.y)
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A linear set of rank `k` with its weight function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSet {
    q: u64,
    rank: u32,
    weights: BTreeMap<ProjPoint, u32>,
}

impl LinearSet {
    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn size(&self) -> usize {
        self.weights.len()
    }

    /// Points in ascending order.
    pub fn points(&self) -> impl Iterator<Item = ProjPoint> + '_ {
        self.weights.keys().copied()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.weights.contains_key(p)
    }

    /// Weight of `p`, 0 when absent.
    pub fn weight(&self, p: &ProjPoint) -> u32 {
        self.weights.get(p).copied().unwrap_or(0)
    }

    pub fn weights(&self) -> &BTreeMap<ProjPoint, u32> {
        &self.weights
    }

    /// `(q^k - 1)/(q - 1)`.
    pub fn size_bound(&self) -> u64 {
        (self.q.pow(self.rank) - 1) / (self.q - 1)
    }

    /// `Σ (q^w - 1) = q^k - 1`.
    pub fn weight_partition_holds(&self) -> bool {
        let total: u64 = self.weights.values().map(|&w| self.q.pow(w) - 1).sum();
        total == self.q.pow(self.rank) - 1
    }

    /// Every weight is 1. Panics if this disagrees with `size == size_bound`,
    /// which can only happen on an inconsistent weight function.
    pub fn is_scattered(&self) -> bool {
        let by_weight = self.weights.values().all(|&w| w == 1);
        let by_size = self.size() as u64 == self.size_bound();
        assert_eq!(by_weight, by_size, "weight and size characterizations of scatteredness disagree");
        by_weight
    }

    /// Same points, ignoring weights.
    pub fn same_points(&self, other: &LinearSet) -> bool {
        self.weights.len() == other.weights.len() && self.weights.keys().eq(other.weights.keys())
    }
}

impl Serialize for LinearSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            point: ProjPoint,
            w: u32,
        }
        let weights: Vec<Entry> = self.weights.iter().map(|(&point, &w)| Entry { point, w }).collect();
        let mut st = s.serialize_struct("LinearSet", 4)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("size", &self.size())?;
        st.serialize_field("scattered", &self.is_scattered())?;
        st.serialize_field("weights", &weights)?;
        st.end()
    }
}

/// `L_f = {⟨(x, f(x))⟩ : x ≠ 0}`, built from the value multiset of `f(x)/x`.
pub fn points_of(f: &LinearizedPoly) -> Result<LinearSet> {
    let t = f.tower();
    let q = t.q();
    let mut weights = BTreeMap::new();
    for (m, count) in f.value_multiset().iter() {
        weights.insert(ProjPoint::from_slope(m), weight_of_count(count, q)?);
    }
    Ok(LinearSet {
        q,
        rank: t.n(),
        weights,
    })
}

fn weight_of_count(count: u64, q: u64) -> Result<u32> {
    let mut w = 0;
    let mut pw = 1u64;
    while pw - 1 < count {
        pw *= q;
        w += 1;
    }
    if pw - 1 == count {
        Ok(w)
    } else {
        Err(LpError::BadWeight { count, q })
    }
}

pub fn is_scattered(f: &LinearizedPoly) -> Result<bool> {
    Ok(points_of(f)?.is_scattered())
}

/// `P ↦ M · P^τ` with `M = [[a, b], [c, d]]` and `τ = x ↦ x^(p^k)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SemilinearMap {
    m: [FieldElement; 4],
    k: u32,
}

impl fmt::Display for SemilinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.m;
        write!(f, "({a},{b};{c},{d})^p^{}", self.k)
    }
}

impl Serialize for SemilinearMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SemilinearMap", 2)?;
        st.serialize_field("matrix", &self.m)?;
        st.serialize_field("frobenius", &self.k)?;
        st.end()
    }
}

impl SemilinearMap {
    /// Normalizes the matrix; rejects a singular matrix or `k >= rn`.
    pub fn new(tower: &FieldTower, m: [FieldElement; 4], k: u32) -> Result<Self> {
        for &e in &m {
            tower.element(e.encoding())?;
        }
        if k >= tower.degree() {
            return Err(LpError::Precondition("frobenius exponent below rn"));
        }
        Self::normalized(tower, m, k).ok_or(LpError::Precondition("nonsingular matrix"))
    }

    pub(crate) fn normalized(t: &FieldTower, m: [FieldElement; 4], k: u32) -> Option<Self> {
        let [a, b, c, d] = m;
        if t.sub(t.mul(a, d), t.mul(b, c)).is_zero() {
            return None;
        }
        let lead = *m.iter().find(|e| !e.is_zero())?;
        let inv = t.inv_nonzero(lead);
        Some(SemilinearMap {
            m: m.map(|e| t.mul(e, inv)),
            k,
        })
    }

    /// Trusted constructor for already-normalized data.
    pub(crate) fn from_normalized(m: [FieldElement; 4], k: u32) -> Self {
        SemilinearMap { m, k }
    }

    pub fn identity() -> Self {
        SemilinearMap {
            m: [FieldElement::ONE, FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE],
            k: 0,
        }
    }

    /// `(diag(1, d), x ↦ x^(p^k))`, `d != 0`.
    pub fn diagonal(tower: &FieldTower, d: FieldElement, k: u32) -> Result<Self> {
        Self::new(tower, [FieldElement::ONE, FieldElement::ZERO, FieldElement::ZERO, d], k)
    }

    /// `([[0, 1], [c, 0]], x ↦ x^(p^k))`, `c != 0`.
    pub fn antidiagonal(tower: &FieldTower, c: FieldElement, k: u32) -> Result<Self> {
        Self::new(tower, [FieldElement::ZERO, FieldElement::ONE, c, FieldElement::ZERO], k)
    }

    pub fn matrix(&self) -> [FieldElement; 4] {
        self.m
    }

    pub fn frobenius_exponent(&self) -> u32 {
        self.k
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn apply_point(&self, t: &FieldTower, p: &ProjPoint) -> ProjPoint {
        let [a, b, c, d] = self.m;
        let x = t.frobenius(p.x, self.k as i64);
        let y = t.frobenius(p.y, self.k as i64);
        let nx = t.add(t.mul(a, x), t.mul(b, y));
        let ny = t.add(t.mul(c, x), t.mul(d, y));
        ProjPoint::normalized(t, nx, ny).expect("nonsingular map sends points to points")
    }

    /// `(M, τ) ∘ (N, υ) = (M · N^τ, τυ)`, so that `(φ ∘ ψ)(P) = φ(ψ(P))`.
    pub fn compose(&self, t: &FieldTower, other: &SemilinearMap) -> SemilinearMap {
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = other.m.map(|x| t.frobenius(x, self.k as i64));
        let m = [
            t.add(t.mul(a, e), t.mul(b, g)),
            t.add(t.mul(a, f), t.mul(b, h)),
            t.add(t.mul(c, e), t.mul(d, g)),
            t.add(t.mul(c, f), t.mul(d, h)),
        ];
        Self::normalized(t, m, (self.k + other.k) % t.degree()).expect("product of nonsingular maps")
    }

    /// `((M^-1)^(τ^-1), τ^-1)`.
    pub fn inverse(&self, t: &FieldTower) -> SemilinearMap {
        let [a, b, c, d] = self.m;
        let back = (t.degree() - self.k) % t.degree();
        let m = [d, t.neg(b), t.neg(c), a].map(|x| t.frobenius(x, back as i64));
        Self::normalized(t, m, back).expect("nonsingular")
    }
}

/// The image `L^φ` with weights transported.
pub fn apply_map(tower: &FieldTower, set: &LinearSet, phi: &SemilinearMap) -> LinearSet {
    let weights = set.weights.iter().map(|(p, &w)| (phi.apply_point(tower, p), w)).collect();
    LinearSet {
        q: set.q,
        rank: set.rank,
        weights,
    }
}

/// The three coefficient-identity families that hold whenever `L_f = L_g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoefficientIdentities {
    /// `α_0 = β_0`.
    pub constant: bool,
    /// `α_k α_{n-k}^(q^k) = β_k β_{n-k}^(q^k)` for `1 <= k < n`.
    pub products: bool,
    /// `α_1 α_{k-1}^q α_{n-k}^(q^k) + α_k α_{n-1}^q α_{n-k+1}^(q^k)` matches, `2 <= k < n`.
    pub triples: bool,
}

impl CoefficientIdentities {
    pub fn all(&self) -> bool {
        self.constant && self.products && self.triples
    }
}

pub fn check_coefficient_identities(f: &LinearizedPoly, g: &LinearizedPoly) -> Result<CoefficientIdentities> {
    if f.tower() != g.tower() {
        return Err(LpError::CrossTower);
    }
    let t = &**f.tower();
    let n = t.n() as i64;
    let r = t.r() as i64;
    let product = |h: &LinearizedPoly, k: i64| t.mul(h.coeff(k), t.frobenius(h.coeff(n - k), r * k));
    let triple = |h: &LinearizedPoly, k: i64| {
        let first = t.mul(
            t.mul(h.coeff(1), t.frobenius(h.coeff(k - 1), r)),
            t.frobenius(h.coeff(n - k), r * k),
        );
        let second = t.mul(
            t.mul(h.coeff(k), t.frobenius(h.coeff(n - 1), r)),
            t.frobenius(h.coeff(n - k + 1), r * k),
        );
        t.add(first, second)
    };
    Ok(CoefficientIdentities {
        constant: f.coeff(0) == g.coeff(0),
        products: (1..n).all(|k| product(f, k) == product(g, k)),
        triples: (2..n).all(|k| triple(f, k) == triple(g, k)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linpoly::LPParams;
    use std::sync::Arc;

    fn tower(p: u64, r: u32, n: u32) -> Arc<FieldTower> {
        Arc::new(FieldTower::new(p, r, n).unwrap())
    }

    #[test]
    fn point_normalization() {
        let t = tower(3, 1, 3);
        let a = t.gen_pow(5);
        let x = t.gen_pow(11);
        let p = ProjPoint::new(&t, x, t.mul(x, a)).unwrap();
        assert_eq!(p, ProjPoint::from_slope(a));
        assert_eq!(ProjPoint::new(&t, p.x(), p.y()).unwrap(), p);
        assert_eq!(ProjPoint::new(&t, FieldElement::ZERO, x).unwrap(), ProjPoint::INFINITY);
        assert!(ProjPoint::new(&t, FieldElement::ZERO, FieldElement::ZERO).is_err());
        assert_eq!(ProjPoint::from_slope(a).to_string(), format!("[1:{}]", a));
    }

    #[test]
    fn zero_and_pseudoregulus() {
        let t = tower(3, 1, 3);
        let zero = points_of(&LinearizedPoly::zero(&t)).unwrap();
        assert_eq!(zero.size(), 1);
        assert_eq!(zero.weight(&ProjPoint::from_slope(FieldElement::ZERO)), 3);
        assert!(!zero.is_scattered());
        assert!(zero.weight_partition_holds());

        let pr = points_of(&LinearizedPoly::monomial(&t, 1, FieldElement::ONE)).unwrap();
        assert_eq!(pr.size(), 13);
        assert!(pr.is_scattered());
        assert!(!pr.contains(&ProjPoint::INFINITY));
    }

    #[test]
    fn lp_scattered_iff_norm_not_one() {
        let t = tower(3, 1, 4);
        for th in t.nonzero_elements() {
            let params = LPParams::new(&t, 1, th).unwrap();
            let set = points_of(&LinearizedPoly::lp(&t, &params)).unwrap();
            assert!(set.weight_partition_holds());
            assert!(set.size() as u64 <= set.size_bound());
            let norm_one = t.norm_q(th, 1).unwrap() == FieldElement::ONE;
            assert_eq!(set.is_scattered(), !norm_one);
            if norm_one {
                assert!(set.weights().values().any(|&w| w >= 2));
            }
        }
    }

    #[test]
    fn map_examples() {
        let t = tower(3, 1, 3);
        let f = t
            .nonzero_elements()
            .map(|th| LinearizedPoly::lp(&t, &LPParams::new(&t, 1, th).unwrap()))
            .find(|f| f.is_bijective() && f.coeff(2) != FieldElement::ONE)
            .unwrap();
        let set = points_of(&f).unwrap();
        assert_eq!(apply_map(&t, &set, &SemilinearMap::identity()), set);

        let d = t.gen_pow(4);
        let diag = SemilinearMap::diagonal(&t, d, 0).unwrap();
        assert_eq!(apply_map(&t, &set, &diag), points_of(&f.scale(d)).unwrap());

        let c = t.gen_pow(9);
        let finv = f.inverse().unwrap();
        let anti = SemilinearMap::antidiagonal(&t, c, 0).unwrap();
        let image = apply_map(&t, &set, &anti);
        let expected = points_of(&finv.scale(c)).unwrap();
        assert!(image.same_points(&expected));
    }

    #[test]
    fn group_action_and_inverse() {
        let t = tower(2, 2, 3);
        let f = LinearizedPoly::lp(&t, &LPParams::new(&t, 1, t.gen_pow(5)).unwrap());
        let set = points_of(&f).unwrap();
        let phi = SemilinearMap::new(&t, [t.gen_pow(1), t.gen_pow(2), FieldElement::ONE, t.gen_pow(40)], 1).unwrap();
        let psi = SemilinearMap::new(&t, [FieldElement::ZERO, t.gen_pow(3), t.gen_pow(17), t.gen_pow(8)], 4).unwrap();
        let lhs = apply_map(&t, &set, &phi.compose(&t, &psi));
        let rhs = apply_map(&t, &apply_map(&t, &set, &psi), &phi);
        assert_eq!(lhs, rhs);
        assert!(phi.compose(&t, &phi.inverse(&t)).is_identity());
        assert!(psi.inverse(&t).compose(&t, &psi).is_identity());
        assert!(SemilinearMap::new(&t, [FieldElement::ONE; 4], 0).is_err());
        assert!(SemilinearMap::new(&t, [FieldElement::ONE, FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE], 6).is_err());
    }

    #[test]
    fn coefficient_identities_examples() {
        let t = tower(3, 1, 4);
        let f = LinearizedPoly::new(&t, vec![t.gen_pow(3), t.gen_pow(10), FieldElement::ONE, t.gen_pow(33)]).unwrap();
        assert!(check_coefficient_identities(&f, &f).unwrap().all());
        assert!(check_coefficient_identities(&f, &f.adjoint()).unwrap().all());
        let g = LinearizedPoly::monomial(&t, 0, FieldElement::ONE);
        assert!(!check_coefficient_identities(&f, &g).unwrap().constant);
    }

    #[test]
    fn weight_counts() {
        assert_eq!(weight_of_count(2, 3).unwrap(), 1);
        assert_eq!(weight_of_count(26, 3).unwrap(), 3);
        assert!(weight_of_count(5, 3).is_err());
    }
}
