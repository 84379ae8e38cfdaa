//! The resilience polygon `F_q` and the linear outer bound built on it.
//!
//! Vertices are rationals with denominator `q`. Query points are snapped to
//! the grid `1e-12 * Z` and every predicate is evaluated in exact `i128`
//! arithmetic, so points on an edge are classified without sign flips.

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::bounds::{in_resilience_closure, AlphabetSize, BoundSource, BoundValue, ErrorPoint};
use crate::error::{Error, Result};

/// Query coordinates are represented as `round(x * SNAP) / SNAP`.
const SNAP: i128 = 1_000_000_000_000;

pub type Rational = Ratio<i128>;

/// `F_q`: vertex `(0,0)` followed by `(i(i-1)/q, (q-i)/q)` for `i = q, ..., 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResiliencePolygon {
    q: AlphabetSize,
    /// Numerators over `q`, counterclockwise from the origin.
    vertices: Vec<(i128, i128)>,
}

/// Where the ray from the origin through a point leaves `F_q`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScalingResult {
    /// Scale `t` with `t * point` on the outer boundary; infinite only for the origin.
    pub alpha: f64,
    #[serde(skip)]
    pub alpha_exact: Option<Rational>,
    pub boundary_point: Option<(f64, f64)>,
}

impl ResiliencePolygon {
    pub fn new(q: AlphabetSize) -> Self {
        let n = q.get() as i128;
        let mut vertices = Vec::with_capacity(q.get() as usize + 1);
        vertices.push((0, 0));
        for i in (1..=n).rev() {
            vertices.push((i * (i - 1), n - i));
        }
        ResiliencePolygon { q, vertices }
    }

    pub fn q(&self) -> AlphabetSize {
        self.q
    }

    /// Vertices in counterclockwise order, starting at the origin.
    pub fn vertices(&self) -> Vec<(f64, f64)> {
        let qf = self.q.as_f64();
        self.vertices
            .iter()
            .map(|&(x, y)| (x as f64 / qf, y as f64 / qf))
            .collect()
    }

    pub fn exact_vertices(&self) -> Vec<(Rational, Rational)> {
        let n = self.q.get() as i128;
        self.vertices
            .iter()
            .map(|&(x, y)| (Ratio::new(x, n), Ratio::new(y, n)))
            .collect()
    }

    /// The non-axis boundary, from `(q-1, 0)` to `(0, 1-1/q)`.
    pub fn outer_edges(&self) -> Vec<((f64, f64), (f64, f64))> {
        let v = self.vertices();
        v[1..].windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// Membership with the border rule of the resilience theorem: the open
    /// interior plus the half-open axis segments `[(0,0),(q-1,0))` and
    /// `[(0,0),(0,1-1/q))`.
    pub fn contains(&self, point: (f64, f64)) -> bool {
        if point.0 < 0.0 || point.1 < 0.0 {
            return false;
        }
        let p = snap(point);
        if p == (0, 0) {
            return true;
        }
        match self.exact_alpha(p) {
            Some(t) => t > Ratio::from_integer(1),
            None => false,
        }
    }

    /// Scale at which the ray through `point` crosses the outer boundary.
    pub fn scaling_alpha(&self, point: (f64, f64)) -> Result<ScalingResult> {
        if !(point.0 >= 0.0 && point.1 >= 0.0) || !point.0.is_finite() || !point.1.is_finite() {
            return Err(Error::domain(format!(
                "point {point:?} must have nonnegative coordinates"
            )));
        }
        let p = snap(point);
        if p == (0, 0) {
            return Err(Error::domain("zero vector has no ray direction"));
        }
        let t = self
            .exact_alpha(p)
            .ok_or_else(|| Error::domain(format!("ray through {point:?} misses the boundary")))?;
        let alpha = t.to_f64().unwrap_or(f64::INFINITY);
        let (px, py) = (p.0 as f64 / SNAP as f64, p.1 as f64 / SNAP as f64);
        Ok(ScalingResult {
            alpha,
            alpha_exact: Some(t),
            boundary_point: Some((alpha * px, alpha * py)),
        })
    }

    /// Exact ray-segment intersection against the outer chain.
    fn exact_alpha(&self, p: (i128, i128)) -> Option<Rational> {
        let n = self.q.get() as i128;
        let chain = &self.vertices[1..];
        for w in chain.windows(2) {
            let (a, b) = (w[0], w[1]);
            // The chain runs counterclockwise, so p lies in the cone [a, b]
            // when it is left of a and right of b.
            if cross(a, p) < 0 || cross(p, b) < 0 {
                continue;
            }
            let edge = (b.0 - a.0, b.1 - a.1);
            let num = cross(a, edge);
            let den = cross(p, edge);
            if den.is_zero() {
                continue;
            }
            // a, edge are over q and p is over SNAP:
            // t = (num / q^2) / (den / (SNAP q)) = SNAP num / (q den).
            return Some(Ratio::new(SNAP * num, n * den));
        }
        None
    }
}

#[inline]
fn cross(a: (i128, i128), b: (i128, i128)) -> i128 {
    a.0 * b.1 - a.1 * b.0
}

fn snap(point: (f64, f64)) -> (i128, i128) {
    let s = SNAP as f64;
    ((point.0 * s).round() as i128, (point.1 * s).round() as i128)
}

/// Outer bound `1 - 1/alpha`, with `alpha` the distance multiplier to the
/// boundary of `F_q` along the ray through the point.
pub fn linear_outer_bound(q: AlphabetSize, gamma: f64, delta: f64) -> Result<BoundValue> {
    let point = ErrorPoint::new(q, gamma, delta)?;
    let in_closure = in_resilience_closure(q, point.gamma, point.delta);
    if point.is_origin() {
        return Ok(BoundValue::from_raw(
            Some(1.0),
            BoundSource::LinearOuter,
            true,
        ));
    }
    let polygon = ResiliencePolygon::new(q);
    let scaling = polygon.scaling_alpha((point.gamma, point.delta))?;
    let raw = match scaling.alpha_exact {
        Some(t) => (Ratio::from_integer(1) - t.recip())
            .to_f64()
            .unwrap_or(f64::NAN),
        None => 1.0 - 1.0 / scaling.alpha,
    };
    Ok(BoundValue::from_raw(
        Some(raw),
        BoundSource::LinearOuter,
        in_closure,
    ))
}
