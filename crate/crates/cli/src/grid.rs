use lpset::gf::numtheory::is_prime;
use lpset::LpError;

/// Parses `2,3,5`, `3-6` or a mix such as `2-5,7`.
pub fn parse_list(text: &str) -> Result<Vec<u64>, LpError> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let bad = |e: std::num::ParseIntError| LpError::Parse(format!("`{part}`: {e}"));
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b): (u64, u64) = (a.trim().parse().map_err(bad)?, b.trim().parse().map_err(bad)?);
                if a > b {
                    return Err(LpError::Parse(format!("empty range `{part}`")));
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(bad)?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Grid cells in `(p, r, n)` order. Composite `p` inside a range are
/// skipped, listed explicitly they are an error; cells with `q = 2` or
/// `n < 3` are dropped.
pub fn cells(p: &str, r: &str, n: &str) -> Result<Vec<(u64, u32, u32)>, LpError> {
    let ps: Vec<u64> = if p.contains('-') {
        parse_list(p)?.into_iter().filter(|&x| is_prime(x)).collect()
    } else {
        let ps = parse_list(p)?;
        if let Some(&x) = ps.iter().find(|&&x| !is_prime(x)) {
            return Err(LpError::NotPrime(x));
        }
        ps
    };
    let to_u32 = |v: Vec<u64>| -> Result<Vec<u32>, LpError> {
        v.into_iter()
            .map(|x| u32::try_from(x).map_err(|_| LpError::Overflow("grid value")))
            .collect()
    };
    let (rs, ns) = (to_u32(parse_list(r)?)?, to_u32(parse_list(n)?)?);
    let mut out = Vec::new();
    for &p in &ps {
        for &r in &rs {
            for &n in &ns {
                if r >= 1 && n >= 3 && !(p == 2 && r == 1) {
                    out.push((p, r, n));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_and_ranges() {
        assert_eq!(parse_list("2-5,7").unwrap(), vec![2, 3, 4, 5, 7]);
        assert_eq!(cells("2-6", "1", "3").unwrap(), vec![(3, 1, 3), (5, 1, 3)]);
        assert!(matches!(cells("4", "1", "3"), Err(LpError::NotPrime(4))));
        assert!(parse_list("5-2").is_err());
    }
}
