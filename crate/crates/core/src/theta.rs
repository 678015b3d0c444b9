use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A point `ω = exp(2πiθ)` of the unit circle, `θ` an exact rational in `(0, 1)`.
///
/// The fraction is kept reduced; ordering and every classification built on
/// top of it go through integer cross-multiplication.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Theta {
    num: BigInt,
    den: BigInt,
}

impl Theta {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let (num, den) = (num.into(), den.into());
        if den.is_zero() {
            return Err(Error::MalformedTheta(format!("{num}/{den}")));
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / &g, den / &g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if !num.is_positive() || num >= den {
            return Err(Error::MalformedTheta(format!("{num}/{den}")));
        }
        Ok(Theta { num, den })
    }

    pub fn from_ratio(r: &BigRational) -> Result<Self> {
        Theta::new(r.numer().clone(), r.denom().clone())
    }

    /// `θ = 1/2`, i.e. `ω = -1`.
    pub fn half() -> Self {
        Theta { num: BigInt::one(), den: BigInt::from(2) }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn as_ratio(&self) -> BigRational {
        BigRational::new_raw(self.num.clone(), self.den.clone())
    }

    /// `1 - θ`, the parameter of the conjugate `ω̄`.
    pub fn complement(&self) -> Self {
        Theta { num: &self.den - &self.num, den: self.den.clone() }
    }

    pub fn midpoint(&self, other: &Theta) -> Self {
        let r = (self.as_ratio() + other.as_ratio()) / BigInt::from(2);
        Theta::from_ratio(&r).expect("midpoint of two points of (0,1) lies in (0,1)")
    }

    /// `(⌊θ·n⌋, θ·n ∈ ℤ)`: locates θ on the grid `j/n`.
    pub fn grid_position(&self, n: u64) -> (u64, bool) {
        let scaled = &self.num * BigInt::from(n);
        let (quot, rem) = scaled.div_rem(&self.den);
        (quot.to_u64().expect("floor(θ·n) < n"), rem.is_zero())
    }

    /// Numerator and denominator when both fit in a `u64`.
    pub fn small_parts(&self) -> Option<(u64, u64)> {
        Some((self.num.to_u64()?, self.den.to_u64()?))
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.as_ratio();
        r.to_f64().unwrap_or(f64::NAN)
    }

    /// The grid point `j/n`, reduced.
    pub fn grid(j: u64, n: u64) -> Result<Self> {
        Theta::new(j, n)
    }
}

impl Ord for Theta {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Theta {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Parses `NUM/DEN`. Decimal notation is rejected.
impl FromStr for Theta {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedTheta(s.to_string());
        let (num, den) = s.trim().split_once('/').ok_or_else(bad)?;
        let is_int = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        if !is_int(num.trim()) || !is_int(den.trim()) {
            return Err(bad());
        }
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        Theta::new(num, den).map_err(|_| bad())
    }
}

impl Serialize for Theta {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Theta {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
