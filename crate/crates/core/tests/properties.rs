use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use proptest::prelude::*;

use lpset::census::{f_size, lambda_closed};
use lpset::equiv::lp_equivalent;
use lpset::linset::{apply_map, points_of};
use lpset::{FieldElement, FieldTower, LPParams, LinearizedPoly, SemilinearMap};

/// F_81 over F_3, F_64 over F_4, F_125 over F_5.
fn towers() -> &'static [Arc<FieldTower>] {
    static T: OnceLock<Vec<Arc<FieldTower>>> = OnceLock::new();
    T.get_or_init(|| {
        [(3, 1, 4), (2, 2, 3), (5, 1, 3)]
            .iter()
            .map(|&(p, r, n)| Arc::new(FieldTower::new(p, r, n).unwrap()))
            .collect()
    })
}

fn elem(t: &FieldTower, x: u64) -> FieldElement {
    t.element(x % t.order()).unwrap()
}

fn poly(t: &Arc<FieldTower>, coeffs: &[u64]) -> LinearizedPoly {
    let c = (0..t.n() as usize).map(|i| elem(t, coeffs[i % coeffs.len()])).collect();
    LinearizedPoly::new(t, c).unwrap()
}

fn valid_lp(t: &FieldTower, seed: u64) -> FieldElement {
    (0..t.order())
        .map(|k| elem(t, seed.wrapping_add(k)))
        .find(|&x| LPParams::new(t, 1, x).is_ok_and(|p| p.is_valid(t)))
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_ring_laws(i in 0usize..3, a: u64, b: u64, c: u64) {
        let t = &towers()[i];
        let (a, b, c) = (elem(t, a), elem(t, b), elem(t, c));
        prop_assert_eq!(t.mul(a, t.add(b, c)), t.add(t.mul(a, b), t.mul(a, c)));
        prop_assert_eq!(t.sub(t.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(t.mul(a, t.inv(a).unwrap()), t.one());
        }
    }

    #[test]
    fn frobenius_is_multiplicative_and_periodic(i in 0usize..3, a: u64, b: u64, k in 0i64..12) {
        let t = &towers()[i];
        let (a, b) = (elem(t, a), elem(t, b));
        prop_assert_eq!(t.frobenius(t.mul(a, b), k), t.mul(t.frobenius(a, k), t.frobenius(b, k)));
        prop_assert_eq!(t.frobenius(a, t.degree() as i64), a);
    }

    #[test]
    fn norm_multiplicative_trace_additive(i in 0usize..3, a: u64, b: u64) {
        let t = &towers()[i];
        let (a, b) = (elem(t, a), elem(t, b));
        prop_assert_eq!(t.norm_q(t.mul(a, b), 1).unwrap(), t.mul(t.norm_q(a, 1).unwrap(), t.norm_q(b, 1).unwrap()));
        prop_assert_eq!(t.trace_q(t.add(a, b)), t.add(t.trace_q(a), t.trace_q(b)));
    }

    #[test]
    fn adjoint_is_an_involution_with_equal_values(i in 0usize..3, coeffs in prop::collection::vec(any::<u64>(), 1..5)) {
        let t = &towers()[i];
        let f = poly(t, &coeffs);
        prop_assert_eq!(f.adjoint().adjoint(), f.clone());
        prop_assert_eq!(f.value_multiset(), f.adjoint().value_multiset());
    }

    #[test]
    fn composition_evaluates_pointwise(
        i in 0usize..3,
        fc in prop::collection::vec(any::<u64>(), 1..5),
        gc in prop::collection::vec(any::<u64>(), 1..5),
        x: u64,
    ) {
        let t = &towers()[i];
        let (f, g) = (poly(t, &fc), poly(t, &gc));
        let x = elem(t, x);
        prop_assert_eq!(f.compose(&g).unwrap().evaluate(x), f.evaluate(g.evaluate(x)));
    }

    #[test]
    fn semilinear_maps_round_trip(i in 0usize..3, m in prop::array::uniform4(any::<u64>()), k in 0u32..6, seed: u64) {
        let t = &towers()[i];
        let m = m.map(|x| elem(t, x));
        prop_assume!(t.sub(t.mul(m[0], m[3]), t.mul(m[1], m[2])) != t.zero());
        let phi = SemilinearMap::new(t, m, k % t.degree()).unwrap();
        let f = LinearizedPoly::lp(t, &LPParams::new(t, 1, valid_lp(t, seed)).unwrap());
        let set = points_of(&f).unwrap();
        let image = apply_map(t, &set, &phi);
        prop_assert_eq!(image.size(), set.size());
        prop_assert!(apply_map(t, &image, &phi.inverse(t)).same_points(&set));
    }

    #[test]
    fn equivalence_is_reflexive_and_symmetric(i in 0usize..3, a: u64, b: u64) {
        let t = &towers()[i];
        let (theta, delta) = (valid_lp(t, a), valid_lp(t, b));
        let same = lp_equivalent(t, 1, theta, 1, theta).unwrap();
        prop_assert!(same.equivalent && same.checked);
        let ab = lp_equivalent(t, 1, theta, 1, delta).unwrap();
        let ba = lp_equivalent(t, 1, delta, 1, theta).unwrap();
        prop_assert_eq!(ab.equivalent, ba.equivalent);
        if ab.equivalent {
            prop_assert!(ab.checked);
        }
    }

    #[test]
    fn f_sizes_partition_the_field(p in prop::sample::select(vec![2u64, 3, 5, 7, 11]), r in 1u32..16) {
        let total: BigInt = (1..=r).filter(|d| r % d == 0).map(|d| f_size(p, d)).sum();
        prop_assert_eq!(total, BigInt::from(p).pow(r));
    }

    #[test]
    fn lambda_is_positive(p in prop::sample::select(vec![2u64, 3, 5, 7]), r in 1u32..8, n in 3u32..12) {
        prop_assume!(!(p == 2 && r == 1));
        let rep = lambda_closed(p, r, n).unwrap();
        prop_assert!(rep.lambda >= BigInt::from(1));
    }
}
