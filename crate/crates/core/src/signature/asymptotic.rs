use num_rational::Ratio;

use super::ProfileCache;
use crate::error::{domain, Result};
use crate::theta::Theta;
use crate::torus::TorusLink;

/// Limiting per-`n` increments of `θ ↦ σ(T(p,n))` across the segments
/// `(j/p, (j+1)/p)` covering `(0, 1/2]`: `-2(p-1)/p, -2(p-3)/p, …`.
pub fn slope_sequence(p: u64) -> Result<Vec<Ratio<i64>>> {
    if p < 2 {
        return Err(domain(format!("slope profile needs p >= 2, got {p}")));
    }
    let p = p as i64;
    let segments = (p + 1) / 2;
    Ok((0..segments).map(|j| Ratio::new(-2 * (p - 1 - 2 * j), p)).collect())
}

/// `lim σ(T(p,n)) / χ(T(p,n))` as `n → ∞`.
pub fn sigma_chi_limit(p: u64) -> Result<Ratio<i64>> {
    if p < 2 {
        return Err(domain(format!("ratio limit needs p >= 2, got {p}")));
    }
    let p = p as i64;
    Ok(if p % 2 == 1 { Ratio::new(p + 1, 2 * p) } else { Ratio::new(p, 2 * (p - 1)) })
}

/// Secant slopes of the profile of `T(p,n)` over the trimmed segments
/// `(j/p + δ, (j+1)/p - δ)`, `δ = 1/(2n)`, in the units of
/// [`slope_sequence`]: increment per segment of length `1/p`, divided by `n`.
pub fn empirical_slopes(p: u64, n: u64, cache: &ProfileCache) -> Result<Vec<Ratio<i64>>> {
    let expected = slope_sequence(p)?;
    let link = TorusLink::new(p, n)?;
    let profile = cache.get(&link);
    let (p, n) = (p as i64, n as i64);
    let delta = Ratio::new(1, 2 * n);
    expected
        .iter()
        .enumerate()
        .map(|(j, _)| {
            let j = j as i64;
            let start = Ratio::new(j, p) + delta;
            let end = Ratio::new(j + 1, p) - delta;
            if start >= end {
                return Err(domain(format!("n = {n} too small to trim segment {j}")));
            }
            let at = |r: Ratio<i64>| -> Result<i64> {
                Ok(profile.value_at(&Theta::new(*r.numer(), *r.denom())?))
            };
            let rise = at(end)? - at(start)?;
            Ok(Ratio::from(rise) / (end - start) / (p * n))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn r(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    #[test]
    fn slope_examples() {
        assert_eq!(slope_sequence(2).unwrap(), vec![r(-1, 1)]);
        assert_eq!(slope_sequence(3).unwrap(), vec![r(-4, 3), r(0, 1)]);
        assert_eq!(slope_sequence(4).unwrap(), vec![r(-3, 2), r(-1, 2)]);
        assert_eq!(*slope_sequence(6).unwrap().last().unwrap(), r(-1, 3));
        assert_eq!(*slope_sequence(7).unwrap().last().unwrap(), r(0, 1));
        assert!(slope_sequence(1).is_err());
    }

    #[test]
    fn ratio_limits() {
        assert_eq!(sigma_chi_limit(3).unwrap(), r(2, 3));
        assert_eq!(sigma_chi_limit(4).unwrap(), r(2, 3));
        assert_eq!(sigma_chi_limit(2).unwrap(), r(1, 1));
        assert!(sigma_chi_limit(0).is_err());
    }

    #[test]
    fn empirical_slopes_near_limits() {
        let cache = ProfileCache::new();
        for p in 2..=5u64 {
            let n = 100;
            let got = empirical_slopes(p, n, &cache).unwrap();
            let want = slope_sequence(p).unwrap();
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() <= r(4 * p as i64, n as i64), "p={p}: {g} vs {w}");
            }
        }
    }
}
