use num_rational::Ratio;

use crate::torus::TorusLink;

/// The multiset `{x/q + y/p : 1 ≤ x ≤ q-1, 1 ≤ y ≤ p-1}`, stored as sorted
/// numerators `xp + yq` over the common denominator `pq`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSpectrum {
    link: TorusLink,
    values: Vec<u64>,
}

impl LatticeSpectrum {
    pub fn new(link: &TorusLink) -> Self {
        let (p, q) = link.params();
        let mut values = Vec::with_capacity(((p - 1) * (q - 1)) as usize);
        for x in 1..q {
            for y in 1..p {
                values.push(x * p + y * q);
            }
        }
        values.sort_unstable();
        LatticeSpectrum { link: *link, values }
    }

    pub fn link(&self) -> &TorusLink {
        &self.link
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Numerators over [`Self::denominator`], ascending.
    pub fn numerators(&self) -> &[u64] {
        &self.values
    }

    pub fn denominator(&self) -> u64 {
        self.link.product()
    }

    pub fn values(&self) -> impl Iterator<Item = Ratio<u64>> + '_ {
        let d = self.denominator();
        self.values.iter().map(move |&k| Ratio::new(k, d))
    }

    /// `#{s : s·pq < k}`.
    pub fn count_below(&self, k: u64) -> usize {
        self.values.partition_point(|&v| v < k)
    }

    /// `#{s : s·pq <= k}`.
    pub fn count_at_most(&self, k: u64) -> usize {
        self.values.partition_point(|&v| v <= k)
    }
}
