//! Levine–Tristram signatures of torus links.
//!
//! For `ω = exp(2πiθ)` the signature of `T(p,q)` is the lattice sum
//! `Σ ε_θ(x,y)` over `1 ≤ x ≤ q-1`, `1 ≤ y ≤ p-1`, where `ε_θ(x,y)` is `+1`
//! when `θ + x/q + y/p` lies in `(0,1)` mod 2, `-1` when it lies in `(1,2)`
//! mod 2, and `0` when it is an integer.

mod asymptotic;
mod cache;
mod glm;
mod profile;
mod spectrum;

pub use asymptotic::{empirical_slopes, sigma_chi_limit, slope_sequence};
pub use cache::ProfileCache;
pub use glm::glm_signature;
pub use profile::{profile, SignatureProfile};
pub use spectrum::LatticeSpectrum;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{domain, Result};
use crate::theta::Theta;
use crate::torus::TorusLink;

/// Classifies `θ + x/q + y/p` mod 2 on the common denominator
/// `lcm(denom θ, p, q)`.
pub fn epsilon(theta: &Theta, x: u64, y: u64, link: &TorusLink) -> Result<i8> {
    let (p, q) = link.params();
    if x == 0 || x >= q || y == 0 || y >= p {
        return Err(domain(format!(
            "lattice point ({x},{y}) outside 1..={} x 1..={} for {link}",
            q.saturating_sub(1),
            p.saturating_sub(1)
        )));
    }
    let sum = LatticeSum::new(theta, link);
    Ok(sum.epsilon(x, y))
}

/// `σ_ω(T(p,q))` at `ω = exp(2πiθ)`, summed exactly over all lattice points.
pub fn signature_at(link: &TorusLink, theta: &Theta) -> i64 {
    let (p, q) = link.params();
    let sum = LatticeSum::new(theta, link);
    let mut total = 0i64;
    for y in 1..p {
        for x in 1..q {
            total += sum.epsilon(x, y) as i64;
        }
    }
    total
}

/// The classical signature, `ω = -1`.
pub fn classical_signature(link: &TorusLink) -> i64 {
    signature_at(link, &Theta::half())
}

/// Integer data for `θ + x/q + y/p = (base + x·step_x + y·step_y) / D`.
enum LatticeSum {
    Small { base: u128, step_x: u128, step_y: u128, denom: u128 },
    Big { base: BigInt, step_x: BigInt, step_y: BigInt, denom: BigInt },
}

impl LatticeSum {
    fn new(theta: &Theta, link: &TorusLink) -> Self {
        let (p, q) = link.params();
        if let Some((t, den)) = theta.small_parts() {
            let small = (|| {
                let den = den as u128;
                let pq_lcm = (p as u128).lcm(&(q as u128));
                let d = den.checked_div(den.gcd(&pq_lcm))?.checked_mul(pq_lcm)?;
                // 3·D must stay representable for the unreduced numerator.
                d.checked_mul(4)?;
                Some(LatticeSum::Small {
                    base: (t as u128) * (d / den),
                    step_x: d / q as u128,
                    step_y: d / p as u128,
                    denom: d,
                })
            })();
            if let Some(s) = small {
                return s;
            }
        }
        let den = theta.denom().clone();
        let pq_lcm = BigInt::from(p).lcm(&BigInt::from(q));
        let d = den.lcm(&pq_lcm);
        LatticeSum::Big {
            base: theta.numer() * (&d / &den),
            step_x: &d / BigInt::from(q),
            step_y: &d / BigInt::from(p),
            denom: d,
        }
    }

    fn epsilon(&self, x: u64, y: u64) -> i8 {
        match self {
            LatticeSum::Small { base, step_x, step_y, denom } => {
                let n = (base + x as u128 * step_x + y as u128 * step_y) % (2 * denom);
                classify(n == 0 || n == *denom, n < *denom)
            }
            LatticeSum::Big { base, step_x, step_y, denom } => {
                let n = (base + BigInt::from(x) * step_x + BigInt::from(y) * step_y)
                    .mod_floor(&(denom * 2));
                classify(n.is_zero() || &n == denom, &n < denom)
            }
        }
    }
}

fn classify(integral: bool, below_one: bool) -> i8 {
    match (integral, below_one) {
        (true, _) => 0,
        (false, true) => 1,
        (false, false) => -1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::normalize;

    fn t(p: i64, q: i64) -> TorusLink {
        normalize(p, q).unwrap()
    }

    fn th(n: u64, d: u64) -> Theta {
        Theta::new(n, d).unwrap()
    }

    /// Independent oracle: the lattice sum carried out in floating rationals
    /// via `(num, den)` pairs reduced mod 2 one term at a time.
    fn brute_signature(p: u64, q: u64, tn: u64, td: u64) -> i64 {
        let mut s = 0;
        for x in 1..q {
            for y in 1..p {
                // θ + x/q + y/p over the denominator td·p·q
                let den = td * p * q;
                let num = tn * p * q + x * td * p + y * td * q;
                let r = num % (2 * den);
                if r % den == 0 {
                    continue;
                }
                s += if r < den { 1 } else { -1 };
            }
        }
        s
    }

    #[test]
    fn epsilon_cases() {
        assert_eq!(epsilon(&th(1, 2), 1, 1, &t(2, 3)).unwrap(), -1);
        assert_eq!(epsilon(&th(1, 6), 1, 1, &t(2, 3)).unwrap(), 0);
        assert_eq!(epsilon(&th(1, 2), 1, 1, &t(4, 5)).unwrap(), 1);
    }

    #[test]
    fn epsilon_range_checked() {
        assert!(epsilon(&th(1, 2), 0, 1, &t(2, 3)).is_err());
        assert!(epsilon(&th(1, 2), 3, 1, &t(2, 3)).is_err());
        assert!(epsilon(&th(1, 2), 1, 2, &t(2, 3)).is_err());
    }

    #[test]
    fn spot_values() {
        assert_eq!(signature_at(&t(2, 3), &th(1, 2)), -2);
        assert_eq!(signature_at(&t(4, 5), &th(1, 2)), -8);
        assert_eq!(signature_at(&t(3, 4), &th(1, 2)), -6);
        assert_eq!(classical_signature(&t(2, 13)), -12);
        assert_eq!(classical_signature(&t(1, 9)), 0);
        assert_eq!(classical_signature(&t(6, 13)), -36);
    }

    #[test]
    fn vanishes_before_first_jump() {
        for (p, q) in [(2, 3), (3, 7), (5, 6), (4, 9)] {
            let link = t(p, q);
            let theta = th(1, 2 * link.product());
            assert_eq!(signature_at(&link, &theta), 0);
        }
    }

    #[test]
    fn links_start_below_zero() {
        // x/q + y/p = 1 has gcd(p,q) - 1 solutions, each contributing -1 near θ = 0.
        for (p, q) in [(2, 2), (4, 6), (5, 5), (6, 9)] {
            let link = t(p, q);
            let theta = th(1, 2 * link.product());
            assert_eq!(signature_at(&link, &theta), 1 - link.component_count() as i64);
        }
    }

    #[test]
    fn matches_brute_force() {
        for p in 1..=6u64 {
            for q in p..=9u64 {
                for td in [2u64, 5, 7, 12, 60] {
                    for tn in 1..td {
                        let link = TorusLink::new(p, q).unwrap();
                        assert_eq!(
                            signature_at(&link, &th(tn, td)),
                            brute_signature(p, q, tn, td),
                            "T({p},{q}) at {tn}/{td}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn big_theta_path_agrees() {
        // A denominator that forces the arbitrary-precision branch.
        let big: BigInt = BigInt::from(10u8).pow(40);
        let theta = Theta::new(&big / 2 + 1, big.clone()).unwrap();
        let link = t(4, 7);
        let near_half = signature_at(&link, &theta);
        // θ sits just above 1/2 and off every grid point j/28.
        let reference = signature_at(&link, &Theta::new(29, 56).unwrap());
        assert_eq!(near_half, reference);
    }
}
