//! Stable text formats for signature profiles.
//!
//! * CSV: header `theta_numerator,theta_denominator,value`, one row per
//!   open-interval midpoint and per breakpoint, in increasing `θ`.
//! * JSON: [`ProfileDocument`].
//! * Cache files: `#` comment lines, a `link P Q` line, then one breakpoint
//!   per line as `num den interval_value point_value` where `num/den` is the
//!   reduced breakpoint and `interval_value` is the value just to its right.
//!   The value on `(0, first breakpoint)` is not stored; it is
//!   `1 - gcd(p,q)` for every torus link.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signature::SignatureProfile;
use crate::theta::Theta;
use crate::torus::TorusLink;

pub const PROFILE_SCHEMA: &str = "torus-cobordism.profile/1";
const CACHE_MAGIC: &str = "# torus-cobordism profile v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileDocument {
    pub schema: String,
    pub link: TorusLink,
    pub breakpoints: Vec<Theta>,
    pub interval_values: Vec<i64>,
    pub breakpoint_values: Vec<i64>,
}

impl From<&SignatureProfile> for ProfileDocument {
    fn from(p: &SignatureProfile) -> Self {
        ProfileDocument {
            schema: PROFILE_SCHEMA.to_string(),
            link: *p.link(),
            breakpoints: p.breakpoints(),
            interval_values: p.interval_values().to_vec(),
            breakpoint_values: p.breakpoint_values().to_vec(),
        }
    }
}

impl ProfileDocument {
    pub fn into_profile(self) -> Result<SignatureProfile> {
        let grid = self.link.product();
        let numerators = self
            .breakpoints
            .iter()
            .map(|t| match t.grid_position(grid) {
                (j, true) => Ok(j),
                _ => Err(Error::Domain(format!("breakpoint {t} is off the 1/{grid} grid"))),
            })
            .collect::<Result<Vec<_>>>()?;
        SignatureProfile::from_parts(self.link, numerators, self.interval_values, self.breakpoint_values)
    }
}

pub fn profile_json(profile: &SignatureProfile) -> String {
    serde_json::to_string_pretty(&ProfileDocument::from(profile)).expect("profile serializes")
}

pub fn profile_csv(profile: &SignatureProfile) -> String {
    let mut out = String::from("theta_numerator,theta_denominator,value\n");
    let n = profile.grid();
    let cuts: Vec<u64> = std::iter::once(0)
        .chain(profile.breakpoint_numerators().iter().copied())
        .chain(std::iter::once(n))
        .collect();
    for (i, w) in cuts.windows(2).enumerate() {
        if i > 0 {
            let t = Theta::grid(w[0], n).expect("breakpoint in range");
            let _ = writeln!(out, "{},{},{}", t.numer(), t.denom(), profile.breakpoint_values()[i - 1]);
        }
        let mid = Theta::new(w[0] + w[1], 2 * n).expect("midpoint in range");
        let _ = writeln!(out, "{},{},{}", mid.numer(), mid.denom(), profile.interval_values()[i]);
    }
    out
}

pub fn write_cache_file(profile: &SignatureProfile) -> String {
    let mut out = format!("{CACHE_MAGIC}\nlink {} {}\n", profile.link().p(), profile.link().q());
    for (j, right, at) in profile.rows() {
        let t = Theta::grid(j, profile.grid()).expect("breakpoint in range");
        let _ = writeln!(out, "{} {} {} {}", t.numer(), t.denom(), right, at);
    }
    out
}

pub fn read_cache_file(text: &str) -> Result<SignatureProfile> {
    let bad = |msg: &str| Error::Io(format!("malformed profile cache file: {msg}"));
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    if lines.next().map(str::trim) != Some(CACHE_MAGIC) {
        return Err(bad("missing header"));
    }
    let link_line = lines.next().ok_or_else(|| bad("missing link line"))?;
    let fields: Vec<&str> = link_line.split_whitespace().collect();
    let link = match fields.as_slice() {
        ["link", p, q] => TorusLink::new(
            p.parse().map_err(|_| bad("link p"))?,
            q.parse().map_err(|_| bad("link q"))?,
        )?,
        _ => return Err(bad("link line")),
    };
    let grid = link.product();
    let mut breakpoints = Vec::new();
    let mut interval_values = vec![1 - link.component_count() as i64];
    let mut breakpoint_values = Vec::new();
    for line in lines.filter(|l| !l.starts_with('#')) {
        let f: Vec<&str> = line.split_whitespace().collect();
        let [num, den, right, at] = f.as_slice() else {
            return Err(bad("expected four fields"));
        };
        let t = Theta::new(
            num.parse::<u64>().map_err(|_| bad("numerator"))?,
            den.parse::<u64>().map_err(|_| bad("denominator"))?,
        )?;
        let (j, exact) = t.grid_position(grid);
        if !exact {
            return Err(bad("breakpoint off grid"));
        }
        breakpoints.push(j);
        interval_values.push(right.parse().map_err(|_| bad("interval value"))?);
        breakpoint_values.push(at.parse().map_err(|_| bad("point value"))?);
    }
    SignatureProfile::from_parts(link, breakpoints, interval_values, breakpoint_values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::profile;

    #[test]
    fn trefoil_csv() {
        let csv = profile_csv(&profile(&TorusLink::new(2, 3).unwrap()));
        assert_eq!(
            csv,
            "theta_numerator,theta_denominator,value\n1,12,0\n1,6,-1\n1,2,-2\n5,6,-1\n11,12,0\n"
        );
    }

    #[test]
    fn csv_breakpoints_on_grid() {
        let csv = profile_csv(&profile(&TorusLink::new(4, 5).unwrap()));
        let rows: Vec<Vec<u64>> = csv
            .lines()
            .skip(1)
            .map(|l| l.split(',').take(2).map(|v| v.parse().unwrap()).collect())
            .collect();
        // every other row is a breakpoint, whose denominator divides 20
        for r in rows.iter().skip(1).step_by(2) {
            assert_eq!(20 % r[1], 0, "{r:?}");
        }
    }

    #[test]
    fn json_and_cache_roundtrip() {
        for (p, q) in [(1, 4), (2, 3), (4, 6), (5, 8)] {
            let pr = profile(&TorusLink::new(p, q).unwrap());
            let doc: ProfileDocument = serde_json::from_str(&profile_json(&pr)).unwrap();
            assert_eq!(doc.schema, PROFILE_SCHEMA);
            assert_eq!(doc.into_profile().unwrap(), pr);
            assert_eq!(read_cache_file(&write_cache_file(&pr)).unwrap(), pr);
        }
    }

    #[test]
    fn cache_file_format() {
        let text = write_cache_file(&profile(&TorusLink::new(2, 3).unwrap()));
        assert_eq!(text, "# torus-cobordism profile v1\nlink 2 3\n1 6 -2 -1\n5 6 0 -1\n");
        assert!(read_cache_file("garbage").is_err());
        assert!(read_cache_file("# torus-cobordism profile v1\nlink 2 3\n1 7 -2 -1\n").is_err());
    }
}
