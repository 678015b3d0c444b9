use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Largest admissible product `p * q`. Keeps every derived quantity
/// (Euler characteristics, lattice spectra, doubled grid numerators)
/// inside `i64`.
pub const MAX_PRODUCT: u64 = 1 << 40;

/// A torus link `T(p, q)` stored with `p <= q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(u64, u64)", into = "(u64, u64)")]
pub struct TorusLink {
    p: u64,
    q: u64,
}

impl TorusLink {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(domain(format!("torus parameters must be positive, got ({p},{q})")));
        }
        let (p, q) = (p.min(q), p.max(q));
        match p.checked_mul(q) {
            Some(prod) if prod <= MAX_PRODUCT => Ok(TorusLink { p, q }),
            _ => Err(Error::Overflow(format!("T({p},{q}) exceeds product bound {MAX_PRODUCT}"))),
        }
    }

    pub fn unknot() -> Self {
        TorusLink { p: 1, q: 1 }
    }

    /// Braid index after normalization.
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn params(&self) -> (u64, u64) {
        (self.p, self.q)
    }

    pub fn product(&self) -> u64 {
        self.p * self.q
    }

    pub fn component_count(&self) -> u64 {
        self.p.gcd(&self.q)
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    pub fn is_unknot(&self) -> bool {
        self.p == 1
    }

    /// Both orientations `(p, q)` and `(q, p)`, deduplicated.
    pub fn orientations(&self) -> impl Iterator<Item = (u64, u64)> {
        let first = (self.p, self.q);
        let second = (self.q, self.p);
        std::iter::once(first).chain((first != second).then_some(second))
    }

    pub fn chi(&self) -> i64 {
        chi(self)
    }
}

impl fmt::Display for TorusLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.p, self.q)
    }
}

impl TryFrom<(u64, u64)> for TorusLink {
    type Error = Error;

    fn try_from((p, q): (u64, u64)) -> Result<Self> {
        TorusLink::new(p, q)
    }
}

impl From<TorusLink> for (u64, u64) {
    fn from(link: TorusLink) -> Self {
        link.params()
    }
}

pub fn normalize(p: i64, q: i64) -> Result<TorusLink> {
    if p < 1 || q < 1 {
        return Err(domain(format!("torus parameters must be positive, got ({p},{q})")));
    }
    TorusLink::new(p as u64, q as u64)
}

/// Maximal Euler characteristic `-pq + p + q` of a surface in the 4-ball
/// bounding the link.
pub fn chi(link: &TorusLink) -> i64 {
    let (p, q) = (link.p as i64, link.q as i64);
    -p * q + p + q
}

/// Smooth 4-genus `(p-1)(q-1)/2` of a torus knot.
pub fn genus4(link: &TorusLink) -> Result<Ratio<i64>> {
    if !link.is_knot() {
        return Err(domain(format!(
            "{link} has {} components; 4-genus is defined for knots",
            link.component_count()
        )));
    }
    Ok(Ratio::new((link.p as i64 - 1) * (link.q as i64 - 1), 2))
}
