//! q-polynomials `Σ a_i X^(q^i)` over F_{q^n}, identified with the F_q-linear
//! endomorphisms of F_{q^n}.
//!
//! The coefficient layout is always the q-basis. A σ-polynomial with
//! `σ = x ↦ x^(q^s)` is stored by sending the coefficient of `X^(σ^i)` to
//! slot `i·s mod n` (see [`LinearizedPoly::from_sigma`]).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{LpError, Result};
use crate::gf::numtheory::gcd;
use crate::gf::{fp_rank, FieldElement, FieldTower};

#[derive(Clone, PartialEq, Eq)]
pub struct LinearizedPoly {
    tower: Arc<FieldTower>,
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearizedPoly({})", self)
    }
}

/// The comma-separated text form `a0,a1,...,a{n-1}`.
impl fmt::Display for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parameters `(s, θ)` of the LP polynomial `X^(q^s) + θ X^(q^(n-s))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LPParams {
    pub s: u32,
    pub theta: FieldElement,
}

impl LPParams {
    /// Checks `1 <= s < n`, `gcd(s, n) = 1` and that θ is an element of the tower.
    pub fn new(tower: &FieldTower, s: u32, theta: FieldElement) -> Result<Self> {
        let n = tower.n();
        if s == 0 || s >= n || gcd(s as u64, n as u64) != 1 {
            return Err(LpError::NotCoprime { s, n });
        }
        tower.element(theta.encoding())?;
        Ok(LPParams { s, theta })
    }

    /// The scattered condition `N_{q^n/q}(θ) ∉ {0, 1}`.
    pub fn is_valid(&self, tower: &FieldTower) -> bool {
        let norm = tower.norm_q(self.theta, 1).expect("1 divides n");
        !norm.is_zero() && norm != FieldElement::ONE
    }
}

/// `{b ↦ #{x ≠ 0 : f(x) = b x}}`, only nonzero counts stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValueMultiset {
    counts: BTreeMap<FieldElement, u64>,
}

impl ValueMultiset {
    pub fn get(&self, b: FieldElement) -> u64 {
        self.counts.get(&b).copied().unwrap_or(0)
    }
    pub fn iter(&self) -> impl Iterator<Item = (FieldElement, u64)> + '_ {
        self.counts.iter().map(|(&b, &c)| (b, c))
    }
    pub fn len(&self) -> usize {
        self.counts.len()
    }
    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
    pub fn as_map(&self) -> &BTreeMap<FieldElement, u64> {
        &self.counts
    }
}

/// Closed-form and rank-based bijectivity of an LP polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BijectivityReport {
    /// `n` even, or `N_{q^n/q}(θ) != -1`.
    pub closed_form: bool,
    /// Full F_p-rank.
    pub by_rank: bool,
    pub kernel_size: u64,
}

impl LinearizedPoly {
    pub fn new(tower: &Arc<FieldTower>, coeffs: Vec<FieldElement>) -> Result<Self> {
        let n = tower.n() as usize;
        if coeffs.len() != n {
            return Err(LpError::CoefficientCount {
                expected: n,
                got: coeffs.len(),
            });
        }
        for &c in &coeffs {
            tower.element(c.encoding())?;
        }
        Ok(LinearizedPoly {
            tower: Arc::clone(tower),
            coeffs,
        })
    }

    pub fn zero(tower: &Arc<FieldTower>) -> Self {
        LinearizedPoly {
            tower: Arc::clone(tower),
            coeffs: vec![FieldElement::ZERO; tower.n() as usize],
        }
    }

    /// `X`.
    pub fn identity(tower: &Arc<FieldTower>) -> Self {
        Self::monomial(tower, 0, FieldElement::ONE)
    }

    /// `a · X^(q^i)`, `i` reduced mod `n`.
    pub fn monomial(tower: &Arc<FieldTower>, i: u32, a: FieldElement) -> Self {
        let mut p = Self::zero(tower);
        p.coeffs[(i % tower.n()) as usize] = a;
        p
    }

    /// Builds `Σ c_i X^(σ^i)` with `σ = q^s`, re-indexed into the q-basis.
    pub fn from_sigma(tower: &Arc<FieldTower>, s: u32, sigma_coeffs: &[FieldElement]) -> Result<Self> {
        let n = tower.n();
        if gcd(s as u64, n as u64) != 1 {
            return Err(LpError::NotCoprime { s, n });
        }
        let mut p = Self::zero(tower);
        for (i, &c) in sigma_coeffs.iter().enumerate() {
            tower.element(c.encoding())?;
            let slot = (i as u64 * s as u64 % n as u64) as usize;
            p.coeffs[slot] = tower.add(p.coeffs[slot], c);
        }
        Ok(p)
    }

    /// `X^(q^s) + θ X^(q^(n-s))`. Invalid θ is allowed here; callers that need
    /// a scattered member check [`LPParams::is_valid`].
    pub fn lp(tower: &Arc<FieldTower>, params: &LPParams) -> Self {
        let n = tower.n();
        let mut p = Self::zero(tower);
        p.coeffs[(params.s % n) as usize] = FieldElement::ONE;
        let slot = ((n - params.s) % n) as usize;
        p.coeffs[slot] = tower.add(p.coeffs[slot], params.theta);
        p
    }

    /// Parses `a0,a1,...` or the shorthand `lp:s=<s>,theta=<elem>`.
    pub fn parse(tower: &Arc<FieldTower>, text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix("lp:") {
            let mut s = None;
            let mut theta = None;
            for part in rest.split(',') {
                match part.split_once('=') {
                    Some(("s", v)) => {
                        s = Some(v.trim().parse::<u32>().map_err(|e| LpError::Parse(format!("s: {e}")))?)
                    }
                    Some(("theta", v)) => theta = Some(tower.parse_element(v)?),
                    _ => return Err(LpError::Parse(format!("unexpected `{part}` in `{text}`"))),
                }
            }
            let (Some(s), Some(theta)) = (s, theta) else {
                return Err(LpError::Parse(format!("`{text}` needs s and theta")));
            };
            return Ok(Self::lp(tower, &LPParams::new(tower, s, theta)?));
        }
        let coeffs = text
            .split(',')
            .map(|c| tower.parse_element(c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(tower, coeffs)
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: i64) -> FieldElement {
        self.coeffs[i.rem_euclid(self.coeffs.len() as i64) as usize]
    }

    pub fn n(&self) -> u32 {
        self.tower.n()
    }

    /// Largest `i` with `a_i != 0`.
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    fn same_tower(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.tower, &other.tower) || *self.tower == *other.tower {
            Ok(())
        } else {
            Err(LpError::CrossTower)
        }
    }

    /// `Σ a_i x^(q^i)`.
    pub fn evaluate(&self, x: FieldElement) -> FieldElement {
        let t = &*self.tower;
        let r = t.r() as i64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(FieldElement::ZERO, |acc, (i, &c)| {
                t.add(acc, t.mul(c, t.frobenius(x, r * i as i64)))
            })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_tower(other)?;
        let t = &*self.tower;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| t.add(a, b)).collect();
        Ok(LinearizedPoly {
            tower: Arc::clone(&self.tower),
            coeffs,
        })
    }

    /// `c · f`.
    pub fn scale(&self, c: FieldElement) -> Self {
        let t = &*self.tower;
        LinearizedPoly {
            tower: Arc::clone(&self.tower),
            coeffs: self.coeffs.iter().map(|&a| t.mul(c, a)).collect(),
        }
    }

    /// `f ∘ g` modulo `X^(q^n) - X`: `c_k = Σ_{i+j ≡ k} a_i b_j^(q^i)`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        self.same_tower(g)?;
        let t = &*self.tower;
        let n = self.coeffs.len();
        let mut out = vec![FieldElement::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in g.coeffs.iter().enumerate() {
                let term = t.mul(a, t.frobenius(b, t.r() as i64 * i as i64));
                out[(i + j) % n] = t.add(out[(i + j) % n], term);
            }
        }
        Ok(LinearizedPoly {
            tower: Arc::clone(&self.tower),
            coeffs: out,
        })
    }

    /// The adjoint for `⟨x, y⟩ = Tr_{q^n/q}(xy)`: `Σ a_i^(q^(n-i)) X^(q^(n-i))`.
    pub fn adjoint(&self) -> Self {
        let t = &*self.tower;
        let n = self.coeffs.len();
        let mut out = vec![FieldElement::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            let k = (n - i) % n;
            out[k] = t.frobenius(a, t.r() as i64 * k as i64);
        }
        LinearizedPoly {
            tower: Arc::clone(&self.tower),
            coeffs: out,
        }
    }

    /// Counts of `f(x)/x` over `x ∈ F_{q^n}^*`.
    pub fn value_multiset(&self) -> ValueMultiset {
        let t = &*self.tower;
        let mut dense = vec![0u64; t.order() as usize];
        for x in t.nonzero_elements() {
            let b = t.mul(self.evaluate(x), t.inv_nonzero(x));
            dense[b.encoding() as usize] += 1;
        }
        let counts = dense
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(b, c)| (FieldElement::from_encoding_unchecked(b as u64), c))
            .collect();
        ValueMultiset { counts }
    }

    /// F_p-rank of the map (as a `rn × rn` matrix over F_p).
    pub fn fp_rank(&self) -> usize {
        let t = &*self.tower;
        let rows: Vec<Vec<u64>> = (0..t.degree())
            .map(|j| t.digits(self.evaluate(FieldElement::from_encoding_unchecked(t.p().pow(j)))))
            .collect();
        fp_rank(&rows, t.p())
    }

    pub fn is_bijective(&self) -> bool {
        self.fp_rank() == self.tower.degree() as usize
    }

    /// `#{x : f(x) = 0}` by exhaustive scan.
    pub fn kernel_size(&self) -> u64 {
        self.tower.elements().filter(|&x| self.evaluate(x).is_zero()).count() as u64
    }

    /// The compositional inverse, recovered by solving the Moore system
    /// `Σ_i r_i f(γ_j)^(q^i) = γ_j` over an F_q-basis `γ`.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_bijective() {
            return None;
        }
        let t = &*self.tower;
        let n = self.coeffs.len();
        let basis = t.q_basis();
        let images: Vec<FieldElement> = basis.iter().map(|&g| self.evaluate(g)).collect();
        let matrix: Vec<Vec<FieldElement>> = images
            .iter()
            .map(|&b| (0..n).map(|i| t.frobenius(b, t.r() as i64 * i as i64)).collect())
            .collect();
        let coeffs = solve(t, matrix, basis.to_vec())?;
        Some(LinearizedPoly {
            tower: Arc::clone(&self.tower),
            coeffs,
        })
    }
}

/// Gaussian elimination over F_{q^n}; `None` when singular.
fn solve(t: &FieldTower, mut a: Vec<Vec<FieldElement>>, mut b: Vec<FieldElement>) -> Option<Vec<FieldElement>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = t.inv_nonzero(a[col][col]);
        for v in a[col].iter_mut() {
            *v = t.mul(*v, inv);
        }
        b[col] = t.mul(b[col], inv);
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let factor = a[i][col];
            for c in 0..n {
                let sub = t.mul(factor, a[col][c]);
                a[i][c] = t.sub(a[i][c], sub);
            }
            b[i] = t.sub(b[i], t.mul(factor, b[col]));
        }
    }
    Some(b)
}

/// Closed-form bijectivity of `X^(q^s) + θX^(q^(n-s))`, `θ != 0`, checked
/// against the F_p-rank and an exhaustive kernel scan.
pub fn is_bijective_lp(tower: &Arc<FieldTower>, params: &LPParams) -> Result<BijectivityReport> {
    if params.theta.is_zero() {
        return Err(LpError::Precondition("theta != 0"));
    }
    let closed_form = tower.n() % 2 == 0 || tower.norm_q(params.theta, 1)? != tower.from_int(-1);
    let f = LinearizedPoly::lp(tower, params);
    Ok(BijectivityReport {
        closed_form,
        by_rank: f.is_bijective(),
        kernel_size: f.kernel_size(),
    })
}

/// Coefficient of `X^(q^n - 1)` in `(f(X)/X)^((q^n-1)/(q-1))` for the LP
/// polynomial: `1 + N(θ)` for odd `n`, and
/// `1 + N(θ) + N_2(θ) + N_2(θ)^σ` for even `n` (`N_2 = N_{q^n/q^2}`, `σ = q^s`).
pub fn norm_power_coefficient(tower: &FieldTower, params: &LPParams) -> Result<FieldElement> {
    let t = tower;
    let norm = t.norm_q(params.theta, 1)?;
    let base = t.add(FieldElement::ONE, norm);
    if t.n() % 2 == 1 {
        return Ok(base);
    }
    let n2 = t.norm_q(params.theta, 2)?;
    let n2_sigma = t.frobenius(n2, (t.r() * params.s) as i64);
    Ok(t.add(t.add(base, n2), n2_sigma))
}

/// `-Σ_{x≠0} (f(x)/x)^((q^n-1)/(q-1))`, the field-sum form of the same value.
pub fn norm_power_field_sum(tower: &Arc<FieldTower>, params: &LPParams) -> FieldElement {
    let t = &**tower;
    let f = LinearizedPoly::lp(tower, params);
    let e = ((t.order() - 1) / (t.q() - 1)) as u128;
    let sum = t.nonzero_elements().fold(FieldElement::ZERO, |acc, x| {
        let ratio = t.mul(f.evaluate(x), t.inv_nonzero(x));
        t.add(acc, t.pow(ratio, e))
    });
    t.neg(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower(p: u64, r: u32, n: u32) -> Arc<FieldTower> {
        Arc::new(FieldTower::new(p, r, n).unwrap())
    }

    /// Some θ with the requested norm to F_q.
    fn theta_with_norm(t: &FieldTower, norm: FieldElement) -> Option<FieldElement> {
        t.nonzero_elements().find(|&x| t.norm_q(x, 1).unwrap() == norm)
    }

    #[test]
    fn lp_layout() {
        let t = tower(3, 1, 4);
        let th = t.gen_pow(5);
        let f = LinearizedPoly::lp(&t, &LPParams::new(&t, 1, th).unwrap());
        assert_eq!(f.coeffs(), &[FieldElement::ZERO, FieldElement::ONE, FieldElement::ZERO, th]);
        let pseudo = LinearizedPoly::lp(&t, &LPParams::new(&t, 1, FieldElement::ZERO).unwrap());
        assert_eq!(pseudo, LinearizedPoly::monomial(&t, 1, FieldElement::ONE));

        let t5 = tower(2, 1, 5);
        let f5 = LinearizedPoly::lp(&t5, &LPParams::new(&t5, 2, t5.gen_pow(3)).unwrap());
        let nonzero: Vec<usize> = (0..5).filter(|&i| !f5.coeffs()[i].is_zero()).collect();
        assert_eq!(nonzero, vec![2, 3]);
        assert!(matches!(LPParams::new(&t, 2, th), Err(LpError::NotCoprime { .. })));
    }

    #[test]
    fn evaluation_basics() {
        let t = tower(3, 1, 3);
        let th = t.gen_pow(4);
        let f = LinearizedPoly::lp(&t, &LPParams::new(&t, 1, th).unwrap());
        let xq = LinearizedPoly::monomial(&t, 1, FieldElement::ONE);
        for x in t.elements() {
            assert_eq!(xq.evaluate(x), t.pow(x, 3));
        }
        assert_eq!(f.evaluate(FieldElement::ZERO), FieldElement::ZERO);
        assert_eq!(f.evaluate(FieldElement::ONE), t.add(FieldElement::ONE, th));
    }

    #[test]
    fn fq_linearity() {
        let t = tower(2, 2, 3);
        let f = LinearizedPoly::new(&t, vec![t.gen_pow(1), t.gen_pow(7), t.gen_pow(20)]).unwrap();
        let fq: Vec<_> = t.elements().filter(|&x| t.in_subfield(x, 2)).collect();
        for &l in &fq {
            for x in t.elements().step_by(5) {
                for y in t.elements().step_by(7) {
                    let lhs = f.evaluate(t.add(t.mul(l, x), y));
                    let rhs = t.add(t.mul(l, f.evaluate(x)), f.evaluate(y));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn composition_examples() {
        let t = tower(3, 1, 4);
        let id = LinearizedPoly::identity(&t);
        let f = LinearizedPoly::new(&t, vec![t.gen_pow(3), FieldElement::ZERO, t.gen_pow(9), FieldElement::ONE]).unwrap();
        assert_eq!(f.compose(&id).unwrap(), f);
        assert_eq!(id.compose(&f).unwrap(), f);

        let t2 = tower(3, 1, 2);
        let xq = LinearizedPoly::monomial(&t2, 1, FieldElement::ONE);
        assert_eq!(xq.compose(&xq).unwrap(), LinearizedPoly::identity(&t2));

        // h = X^q − θ^(−q³) X^(q³) inverts f = X^q + θ X^(q³) up to θ^q − θ^(−q³).
        for k in [1i128, 7, 22, 50] {
            let th = t.gen_pow(k);
            let f = LinearizedPoly::lp(&t, &LPParams::new(&t, 1, th).unwrap());
            let inv_q3 = t.frobenius(t.inv(th).unwrap(), 3);
            let h = LinearizedPoly::new(
                &t,
                vec![FieldElement::ZERO, FieldElement::ONE, FieldElement::ZERO, t.neg(inv_q3)],
            )
            .unwrap();
            let scalar = t.sub(t.frobenius(th, 1), inv_q3);
            assert_eq!(h.compose(&f).unwrap(), LinearizedPoly::monomial(&t, 0, scalar));
        }
    }

    #[test]
    fn composition_matches_evaluation() {
        let t = tower(5, 1, 3);
        let f = LinearizedPoly::new(&t, vec![t.gen_pow(2), t.gen_pow(40), FieldElement::ZERO]).unwrap();
        let g = LinearizedPoly::new(&t, vec![FieldElement::ONE, t.gen_pow(11), t.gen_pow(99)]).unwrap();
        let fg = f.compose(&g).unwrap();
        for x in t.elements() {
            assert_eq!(fg.evaluate(x), f.evaluate(g.evaluate(x)));
        }
    }

    #[test]
    fn cross_tower_rejected() {
        let a = tower(3, 1, 3);
        let b = tower(2, 1, 3);
        let f = LinearizedPoly::identity(&a);
        let g = LinearizedPoly::identity(&b);
        assert_eq!(f.compose(&g).unwrap_err(), LpError::CrossTower);
        assert_eq!(f.add(&g).unwrap_err(), LpError::CrossTower);
    }

    #[test]
    fn adjoint_examples() {
        let t = tower(3, 1, 5);
        let a0 = t.gen_pow(17);
        let c = LinearizedPoly::monomial(&t, 0, a0);
        assert_eq!(c.adjoint(), c);
        for s in 1..5 {
            let m = LinearizedPoly::monomial(&t, s, FieldElement::ONE);
            assert_eq!(m.adjoint(), LinearizedPoly::monomial(&t, 5 - s, FieldElement::ONE));
        }
        // adjoint(X^σ + θ X^(σ^(n-1))) = θ^σ X^σ + X^(σ^(n-1)), σ = q^2.
        let th = t.gen_pow(31);
        let f = LinearizedPoly::from_sigma(&t, 2, &[FieldElement::ZERO, FieldElement::ONE, FieldElement::ZERO, FieldElement::ZERO, th]).unwrap();
        let th_sigma = t.frobenius(th, 2);
        let expected = LinearizedPoly::from_sigma(
            &t,
            2,
            &[FieldElement::ZERO, th_sigma, FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE],
        )
        .unwrap();
        assert_eq!(f.adjoint(), expected);
        assert_eq!(f, LinearizedPoly::lp(&t, &LPParams::new(&t, 2, th).unwrap()));
    }

    #[test]
    fn adjoint_trace_identity_exhaustive() {
        let t = tower(2, 2, 2);
        let f = LinearizedPoly::new(&t, vec![t.gen_pow(3), t.gen_pow(8)]).unwrap();
        let fh = f.adjoint();
        for y in t.elements() {
            for z in t.elements() {
                assert_eq!(t.trace_q(t.mul(y, f.evaluate(z))), t.trace_q(t.mul(z, fh.evaluate(y))));
            }
        }
        assert_eq!(fh.adjoint(), f);
    }

    #[test]
    fn value_multiset_examples() {
        let t = tower(3, 1, 3);
        let id = LinearizedPoly::identity(&t).value_multiset();
        assert_eq!(id.len(), 1);
        assert_eq!(id.get(FieldElement::ONE), 26);
        let xq = LinearizedPoly::monomial(&t, 1, FieldElement::ONE).value_multiset();
        assert_eq!(xq.total(), 26);
        assert!(xq.iter().all(|(_, c)| c == 2));
    }

    #[test]
    fn inverse_examples() {
        let t = tower(3, 1, 4);
        assert_eq!(LinearizedPoly::identity(&t).inverse().unwrap(), LinearizedPoly::identity(&t));
        for s in 1..4 {
            let m = LinearizedPoly::monomial(&t, s, FieldElement::ONE);
            assert_eq!(m.inverse().unwrap(), LinearizedPoly::monomial(&t, 4 - s, FieldElement::ONE));
        }
        let th = t.gen_pow(13);
        let f = LinearizedPoly::lp(&t, &LPParams::new(&t, 1, th).unwrap());
        let inv_q3 = t.frobenius(t.inv(th).unwrap(), 3);
        let scale = t.inv(t.sub(t.frobenius(th, 1), inv_q3)).unwrap();
        let expected = LinearizedPoly::new(
            &t,
            vec![FieldElement::ZERO, scale, FieldElement::ZERO, t.mul(scale, t.neg(inv_q3))],
        )
        .unwrap();
        assert_eq!(f.inverse().unwrap(), expected);
        assert!(LinearizedPoly::zero(&t).inverse().is_none());
    }

    #[test]
    fn lp_bijectivity() {
        // n even: always bijective.
        let t = tower(3, 1, 4);
        for th in t.nonzero_elements().step_by(3) {
            let params = LPParams::new(&t, 1, th).unwrap();
            if !params.is_valid(&t) {
                continue;
            }
            let rep = is_bijective_lp(&t, &params).unwrap();
            assert!(rep.closed_form && rep.by_rank);
            assert_eq!(rep.kernel_size, 1);
        }
        // n odd, N(θ) = -1: q roots.
        let t = tower(5, 1, 3);
        let th = theta_with_norm(&t, t.from_int(-1)).unwrap();
        let rep = is_bijective_lp(&t, &LPParams::new(&t, 1, th).unwrap()).unwrap();
        assert!(!rep.closed_form && !rep.by_rank);
        assert_eq!(rep.kernel_size, 5);
        let th = theta_with_norm(&t, t.from_int(2)).unwrap();
        let rep = is_bijective_lp(&t, &LPParams::new(&t, 1, th).unwrap()).unwrap();
        assert!(rep.closed_form && rep.by_rank && rep.kernel_size == 1);
    }

    #[test]
    fn norm_power_examples() {
        let t = tower(3, 1, 3);
        let zero = LPParams::new(&t, 1, FieldElement::ZERO).unwrap();
        assert_eq!(norm_power_coefficient(&t, &zero).unwrap(), FieldElement::ONE);
        let th = t.gen_pow(5);
        let params = LPParams::new(&t, 1, th).unwrap();
        let expected = t.add(FieldElement::ONE, t.norm_q(th, 1).unwrap());
        assert_eq!(norm_power_coefficient(&t, &params).unwrap(), expected);
        assert_eq!(norm_power_field_sum(&t, &params), expected);
    }

    #[test]
    fn parse_forms() {
        let t = tower(3, 1, 3);
        let f = LinearizedPoly::parse(&t, "lp:s=1,theta=g^2").unwrap();
        assert_eq!(f, LinearizedPoly::lp(&t, &LPParams::new(&t, 1, t.gen_pow(2)).unwrap()));
        let g = LinearizedPoly::parse(&t, &f.to_string()).unwrap();
        assert_eq!(f, g);
        assert!(LinearizedPoly::parse(&t, "1,2").is_err());
        assert!(LinearizedPoly::parse(&t, "lp:s=3,theta=1").is_err());
    }
}
