//! Row reduction over a prime field.

use super::numtheory::pow_mod;

/// Rank of a list of coordinate vectors over F_p (all of equal length).
pub(crate) fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = pow_mod(m[rank][col], p - 2, p);
        for v in m[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..m.len() {
            if i != rank && m[i][col] != 0 {
                let factor = m[i][col];
                for c in 0..cols {
                    let sub = factor * m[rank][c] % p;
                    m[i][c] = (m[i][c] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}
