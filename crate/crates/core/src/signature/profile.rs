use serde::{Deserialize, Serialize};

use super::spectrum::LatticeSpectrum;
use crate::error::{domain, Result};
use crate::theta::Theta;
use crate::torus::TorusLink;

/// `θ ↦ σ_{exp(2πiθ)}(T(p,q))` on `(0,1)` as an exact step function.
///
/// Breakpoints live on the grid `j/(pq)` and are stored as grid numerators.
/// `interval_values[i]` is the value on the open interval ending at
/// breakpoint `i` (the last entry covers `(last, 1)`), and
/// `breakpoint_values[i]` is the value exactly at breakpoint `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureProfile {
    link: TorusLink,
    grid: u64,
    breakpoints: Vec<u64>,
    interval_values: Vec<i64>,
    breakpoint_values: Vec<i64>,
}

/// Computes the full profile from order statistics of the lattice spectrum.
///
/// With `θ = j/n` (`n = pq`) and spectrum numerators `k`:
/// `σ = #{k < n-j} - #{n-j < k < 2n-j} + #{k > 2n-j}`; the interval value is
/// the same count at `θ = (2j+1)/(2n)`, where no ties can occur.
pub fn profile(link: &TorusLink) -> SignatureProfile {
    let spectrum = LatticeSpectrum::new(link);
    let n = link.product();
    let total = spectrum.len() as i64;

    let interval = |j: u64| -> i64 {
        let plus_low = spectrum.count_at_most(n - j - 1) as i64;
        let plus_high = total - spectrum.count_below(2 * n - j) as i64;
        let minus = total - plus_low - plus_high;
        plus_low - minus + plus_high
    };
    let point = |j: u64| -> i64 {
        let plus_low = spectrum.count_below(n - j) as i64;
        let zero_low = spectrum.count_at_most(n - j) as i64 - plus_low;
        let plus_high = total - spectrum.count_at_most(2 * n - j) as i64;
        let zero_high = total - plus_high - spectrum.count_below(2 * n - j) as i64;
        let minus = total - plus_low - zero_low - plus_high - zero_high;
        plus_low - minus + plus_high
    };

    let mut breakpoints = Vec::new();
    let mut breakpoint_values = Vec::new();
    let mut interval_values = vec![interval(0)];
    let mut left = interval_values[0];
    for j in 1..n {
        let right = interval(j);
        let at = point(j);
        if right != left || at != left {
            breakpoints.push(j);
            breakpoint_values.push(at);
            interval_values.push(right);
        }
        left = right;
    }

    SignatureProfile { link: *link, grid: n, breakpoints, interval_values, breakpoint_values }
}

impl SignatureProfile {
    /// Assembles a profile from stored parts, checking shape and grid bounds.
    pub fn from_parts(
        link: TorusLink,
        breakpoints: Vec<u64>,
        interval_values: Vec<i64>,
        breakpoint_values: Vec<i64>,
    ) -> Result<Self> {
        let grid = link.product();
        if interval_values.len() != breakpoints.len() + 1
            || breakpoint_values.len() != breakpoints.len()
        {
            return Err(domain("profile parts have inconsistent lengths"));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1])
            || breakpoints.iter().any(|&j| j == 0 || j >= grid)
        {
            return Err(domain("profile breakpoints must be strictly increasing in (0, pq)"));
        }
        Ok(SignatureProfile { link, grid, breakpoints, interval_values, breakpoint_values })
    }

    pub fn link(&self) -> &TorusLink {
        &self.link
    }

    /// Common denominator `pq` of all breakpoints.
    pub fn grid(&self) -> u64 {
        self.grid
    }

    pub fn breakpoint_numerators(&self) -> &[u64] {
        &self.breakpoints
    }

    pub fn breakpoints(&self) -> Vec<Theta> {
        self.breakpoints
            .iter()
            .map(|&j| Theta::grid(j, self.grid).expect("breakpoint inside (0,1)"))
            .collect()
    }

    pub fn interval_values(&self) -> &[i64] {
        &self.interval_values
    }

    pub fn breakpoint_values(&self) -> &[i64] {
        &self.breakpoint_values
    }

    pub fn is_constant(&self) -> bool {
        self.breakpoints.is_empty()
    }

    pub fn first_breakpoint(&self) -> Option<Theta> {
        self.breakpoints.first().map(|&j| Theta::grid(j, self.grid).expect("in range"))
    }

    /// Index of the open interval containing grid position `j + ε`.
    pub(crate) fn interval_index_after(&self, j: u64) -> usize {
        self.breakpoints.partition_point(|&b| b <= j)
    }

    /// `σ_ω` at `ω = exp(2πiθ)`.
    pub fn value_at(&self, theta: &Theta) -> i64 {
        let (j, exact) = theta.grid_position(self.grid);
        if exact {
            if let Ok(i) = self.breakpoints.binary_search(&j) {
                return self.breakpoint_values[i];
            }
        }
        self.interval_values[self.interval_index_after(j)]
    }

    /// Value on the open grid cell `(j/pq, (j+1)/pq)`.
    pub fn value_on_cell(&self, j: u64) -> i64 {
        self.interval_values[self.interval_index_after(j)]
    }

    /// Breakpoint numerators paired with their (interval-to-the-right, point) values.
    pub fn rows(&self) -> impl Iterator<Item = (u64, i64, i64)> + '_ {
        self.breakpoints
            .iter()
            .zip(&self.interval_values[1..])
            .zip(&self.breakpoint_values)
            .map(|((&j, &right), &at)| (j, right, at))
    }

    pub fn min_value(&self) -> i64 {
        self.interval_values.iter().chain(&self.breakpoint_values).copied().min().unwrap_or(0)
    }
}
