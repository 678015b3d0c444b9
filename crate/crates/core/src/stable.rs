//! Bounds for the stable 4-genus semi-norm on the plane spanned by two torus
//! knots, and polygonal approximations of its unit ball.

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::bounds::{merged_samples, SampleKind};
use crate::error::{domain, Result};
use crate::planner::{best_upper, SearchBudget};
use crate::signature::ProfileCache;
use crate::torus::{genus4, TorusLink};

pub type Q = Ratio<i64>;

fn as_str<S: Serializer>(r: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

/// The element `x·K + y·L` of the rationalized concordance group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairSpanPoint {
    pub basis: (TorusLink, TorusLink),
    #[serde(serialize_with = "as_str")]
    pub x: Q,
    #[serde(serialize_with = "as_str")]
    pub y: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormBounds {
    pub point: PairSpanPoint,
    #[serde(serialize_with = "as_str")]
    pub lower: Q,
    #[serde(serialize_with = "as_str")]
    pub upper: Q,
    pub exhaustive: bool,
}

/// `g_st(T(p,q)) = (p-1)(q-1)/2` for torus knots.
pub fn gst_axis(l: &TorusLink) -> Result<Q> {
    if !l.is_knot() {
        return Err(domain(format!("{l} is not a knot")));
    }
    genus4(l)
}

/// Everything needed to bound the semi-norm on the span of two knots:
/// the axis genera, the genus of the best cobordism found between them
/// and the signature pairs on every open cell of the merged partition.
#[derive(Debug, Clone)]
pub struct SpanBasis {
    k: TorusLink,
    l: TorusLink,
    gk: Q,
    gl: Q,
    cross: Q,
    exhaustive: bool,
    signatures: Vec<(i64, i64)>,
}

impl SpanBasis {
    pub fn new(k: TorusLink, l: TorusLink, budget: SearchBudget, cache: &ProfileCache) -> Result<Self> {
        let gk = gst_axis(&k)?;
        let gl = gst_axis(&l)?;
        let best = best_upper(k.p(), k.q(), l.p(), l.q(), budget)?;
        let cobordism = Ratio::new(best.plan.total_cost as i64, 2);
        let cross = cobordism.min(gk + gl);
        let (pk, pl) = (cache.get(&k), cache.get(&l));
        let mut signatures: Vec<(i64, i64)> = merged_samples(&[&pk, &pl])
            .into_iter()
            .filter(|s| s.kind == SampleKind::Interval)
            .map(|s| (s.values[0], s.values[1]))
            .collect();
        signatures.sort_unstable();
        signatures.dedup();
        Ok(SpanBasis { k, l, gk, gl, cross, exhaustive: best.exhaustive, signatures })
    }

    pub fn links(&self) -> (TorusLink, TorusLink) {
        (self.k, self.l)
    }

    /// Genus bound used for `K - L`: the cheapest cobordism found, capped by
    /// `g(K) + g(L)`.
    pub fn cross_genus(&self) -> Q {
        self.cross
    }

    pub fn point(&self, x: Q, y: Q) -> PairSpanPoint {
        PairSpanPoint { basis: (self.k, self.l), x, y }
    }

    pub fn norm_upper(&self, x: Q, y: Q) -> Q {
        let (ax, ay) = (x.abs(), y.abs());
        if x.is_zero() || y.is_zero() || x.is_positive() == y.is_positive() {
            return ax * self.gk + ay * self.gl;
        }
        let m = ax.min(ay);
        m * self.cross + (ax - m) * self.gk + (ay - m) * self.gl
    }

    pub fn norm_lower(&self, x: Q, y: Q) -> Q {
        let sig = self
            .signatures
            .iter()
            .map(|&(a, b)| (x * a + y * b).abs() / 2)
            .max()
            .unwrap_or_else(Q::zero);
        sig.max((x * self.gk + y * self.gl).abs())
    }

    pub fn bounds(&self, x: Q, y: Q) -> NormBounds {
        NormBounds {
            point: self.point(x, y),
            lower: self.norm_lower(x, y),
            upper: self.norm_upper(x, y),
            exhaustive: self.exhaustive,
        }
    }
}

pub fn norm_upper(pt: &PairSpanPoint, budget: SearchBudget, cache: &ProfileCache) -> Result<(Q, bool)> {
    let basis = SpanBasis::new(pt.basis.0, pt.basis.1, budget, cache)?;
    Ok((basis.norm_upper(pt.x, pt.y), basis.exhaustive))
}

pub fn norm_lower(pt: &PairSpanPoint, cache: &ProfileCache) -> Result<Q> {
    let basis = SpanBasis::new(pt.basis.0, pt.basis.1, SearchBudget::new(0), cache)?;
    Ok(basis.norm_lower(pt.x, pt.y))
}

/// One ray of the ball: the unit ball meets the ray through `direction`
/// somewhere between `inner` and `outer` times the direction vector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallRay {
    pub direction_x: f64,
    pub direction_y: f64,
    #[serde(skip)]
    pub bounds: NormBounds,
    pub lower_radius: f64,
    /// `None` when the lower bound vanishes in this direction.
    pub upper_radius: Option<f64>,
}

/// `resolution` directions on the boundary of the square `max(|x|,|y|) = 1`,
/// counter-clockwise from `(1,0)`, evenly spaced by perimeter.
pub fn ball_directions(resolution: u32) -> Result<Vec<(Q, Q)>> {
    if resolution < 4 {
        return Err(domain("resolution must be at least 4"));
    }
    let r = resolution as i64;
    Ok((0..r)
        .map(|k| {
            let s = Ratio::new(8 * k, r);
            let one = Q::from(1);
            if s < one {
                (one, s)
            } else if s < Q::from(3) {
                (Q::from(2) - s, one)
            } else if s < Q::from(5) {
                (-one, Q::from(4) - s)
            } else if s < Q::from(7) {
                (s - Q::from(6), -one)
            } else {
                (one, s - Q::from(8))
            }
        })
        .collect())
}

pub fn ball_polygon(basis: &SpanBasis, resolution: u32) -> Result<Vec<BallRay>> {
    let f = |q: Q| *q.numer() as f64 / *q.denom() as f64;
    Ok(ball_directions(resolution)?
        .into_iter()
        .map(|(x, y)| {
            let bounds = basis.bounds(x, y);
            BallRay {
                direction_x: f(x),
                direction_y: f(y),
                lower_radius: 1.0 / f(bounds.upper),
                upper_radius: (!bounds.lower.is_zero()).then(|| 1.0 / f(bounds.lower)),
                bounds,
            }
        })
        .collect())
}

pub fn ball_csv(rays: &[BallRay]) -> String {
    let mut out = String::from("direction_x,direction_y,lower_radius,upper_radius\n");
    for r in rays {
        let upper = r.upper_radius.map_or_else(|| "inf".to_string(), |u| u.to_string());
        out.push_str(&format!("{},{},{},{}\n", r.direction_x, r.direction_y, r.lower_radius, upper));
    }
    out
}
