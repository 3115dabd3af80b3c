//! Dense polynomials over a prime field, just enough for the deterministic
//! irreducibility test and the canonical-modulus search.

/// Coefficients ascending; no trailing zeros except for the zero polynomial `[]`.
pub(crate) type FpPoly = Vec<u64>;

fn trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    super::numtheory::pow_mod(a, p - 2, p)
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> FpPoly {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let factor = r[r.len() - 1] * lead_inv % p;
        for (i, &c) in m.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p - factor * c % p) % p;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem(&prod, m, p)
}

/// `base^(p^k) mod m` by `k` repeated p-th powers.
fn frobenius_power(base: &[u64], k: u32, m: &[u64], p: u64) -> FpPoly {
    let mut acc = base.to_vec();
    for _ in 0..k {
        acc = pow_mod_poly(&acc, p, m, p);
    }
    acc
}

fn pow_mod_poly(base: &[u64], mut e: u64, m: &[u64], p: u64) -> FpPoly {
    let mut acc: FpPoly = vec![1];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Rabin's test: `m` (monic, degree `d >= 1`) is irreducible over F_p iff
/// `x^(p^d) = x mod m` and `gcd(x^(p^(d/l)) - x, m) = 1` for every prime `l | d`.
pub(crate) fn is_irreducible(m: &[u64], p: u64) -> bool {
    let d = m.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x: FpPoly = vec![0, 1];
    let full = frobenius_power(&x, d as u32, m, p);
    if sub(&full, &x, p) != Vec::<u64>::new() {
        return false;
    }
    for (l, _) in super::numtheory::factorize(d as u64) {
        let partial = frobenius_power(&x, (d as u64 / l) as u32, m, p);
        let g = gcd(&sub(&partial, &x, p), m, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Monic polynomial of degree `d` whose non-leading coefficients are the
/// base-`p` digits of `v`.
pub(crate) fn monic_from_index(v: u64, d: u32, p: u64) -> FpPoly {
    let mut coeffs = Vec::with_capacity(d as usize + 1);
    let mut rest = v;
    for _ in 0..d {
        coeffs.push(rest % p);
        rest /= p;
    }
    coeffs.push(1);
    coeffs
}

/// The monic irreducible of degree `d` minimizing `Σ c_i p^i` over its
/// non-leading coefficients.
pub(crate) fn canonical_irreducible(d: u32, p: u64) -> FpPoly {
    (0u64..)
        .map(|v| monic_from_index(v, d, p))
        .find(|m| is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Irreducible iff no monic factor of degree 1..=d/2 divides it.
    fn irreducible_by_division(m: &[u64], p: u64) -> bool {
        let d = m.len() as u32 - 1;
        for k in 1..=d / 2 {
            for v in 0..p.pow(k) {
                let f = monic_from_index(v, k, p);
                if rem(m, &f, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn rabin_agrees_with_trial_division() {
        for p in [2u64, 3, 5] {
            for d in 1..=4u32 {
                for v in 0..p.pow(d).min(700) {
                    let m = monic_from_index(v, d, p);
                    assert_eq!(is_irreducible(&m, p), irreducible_by_division(&m, p), "{m:?} p={p}");
                }
            }
        }
    }

    #[test]
    fn canonical_quadratic_over_f3() {
        // X^2 (v=0) is reducible; X^2 + 1 (v=1) is the first irreducible.
        assert_eq!(canonical_irreducible(2, 3), vec![1, 0, 1]);
        assert_eq!(canonical_irreducible(1, 2), vec![0, 1]);
    }
}
