use super::classical_signature;
use crate::error::{domain, Result};
use crate::torus::TorusLink;

/// Classical signature of `T(p,q)` via the period-`2p` recursions
/// `σ(T(p,q+2p)) = σ(T(p,q)) - p² + 1` (odd `p`) and `- p²` (even `p`),
/// reduced to a base case `1 ≤ q' ≤ 2p` evaluated by the lattice sum.
pub fn glm_signature(p: u64, q: u64) -> Result<i64> {
    if p < 2 {
        return Err(domain(format!("recursion needs p >= 2, got {p}")));
    }
    if q == 0 {
        return Err(domain("q must be positive"));
    }
    let period = 2 * p;
    let steps = (q - 1) / period;
    let base_q = q - steps * period;
    let base = classical_signature(&TorusLink::new(p, base_q)?);
    let p = p as i64;
    let drop = if p % 2 == 1 { p * p - 1 } else { p * p };
    Ok(base - steps as i64 * drop)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        assert_eq!(glm_signature(3, 8).unwrap(), -10);
    }

    #[test]
    fn even_step_for_two_strands() {
        for q in 1..40 {
            assert_eq!(glm_signature(2, q + 4).unwrap(), glm_signature(2, q).unwrap() - 4);
        }
    }

    #[test]
    fn base_cases_unchanged() {
        for p in 2..=7u64 {
            for q in 1..=2 * p {
                let link = TorusLink::new(p, q).unwrap();
                assert_eq!(glm_signature(p, q).unwrap(), classical_signature(&link));
            }
        }
    }

    #[test]
    fn rejects_small_p() {
        assert!(glm_signature(1, 5).is_err());
        assert!(glm_signature(3, 0).is_err());
    }
}
