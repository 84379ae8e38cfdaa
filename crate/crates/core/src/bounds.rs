//! Closed-form scalar bounds.
//!
//! All logarithms are taken base `q` as a ratio of natural logarithms, and the
//! `x ln x -> 0` limits are applied explicitly instead of relying on what IEEE
//! arithmetic happens to produce at the endpoints.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack used when deciding whether a point sits on a domain boundary.
pub(crate) const EDGE_TOL: f64 = 1e-12;

/// Alphabet size `q >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct AlphabetSize(u32);

impl AlphabetSize {
    pub fn new(q: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::domain(format!(
                "alphabet size must be at least 2, got {q}"
            )));
        }
        Ok(AlphabetSize(q))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_f64(self) -> f64 {
        self.0 as f64
    }

    #[inline]
    pub(crate) fn ln(self) -> f64 {
        self.as_f64().ln()
    }

    /// `log_q(x)`.
    #[inline]
    pub fn log(self, x: f64) -> f64 {
        x.ln() / self.ln()
    }

    /// Largest deletion rate with a positive-rate region, `1 - 1/q`.
    #[inline]
    pub fn max_delta(self) -> f64 {
        1.0 - 1.0 / self.as_f64()
    }

    /// Largest insertion rate with a positive-rate region, `q - 1`.
    #[inline]
    pub fn max_gamma(self) -> f64 {
        self.as_f64() - 1.0
    }
}

impl TryFrom<u32> for AlphabetSize {
    type Error = Error;

    fn try_from(q: u32) -> Result<Self> {
        AlphabetSize::new(q)
    }
}

impl From<AlphabetSize> for u32 {
    fn from(q: AlphabetSize) -> u32 {
        q.0
    }
}

impl fmt::Display for AlphabetSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An (insertion rate, deletion rate) query for a fixed alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorPoint {
    pub q: AlphabetSize,
    pub gamma: f64,
    pub delta: f64,
}

impl ErrorPoint {
    /// Validates `0 <= delta <= 1` and `0 <= gamma <= q - 1`.
    pub fn new(q: AlphabetSize, gamma: f64, delta: f64) -> Result<Self> {
        if !gamma.is_finite() || !delta.is_finite() {
            return Err(Error::domain("error rates must be finite"));
        }
        if !(0.0..=1.0).contains(&delta) {
            return Err(Error::domain(format!(
                "deletion rate {delta} outside [0, 1]"
            )));
        }
        if gamma < 0.0 || gamma > q.max_gamma() + EDGE_TOL {
            return Err(Error::domain(format!(
                "insertion rate {gamma} outside [0, {}]",
                q.max_gamma()
            )));
        }
        Ok(ErrorPoint {
            q,
            gamma: gamma.min(q.max_gamma()),
            delta,
        })
    }

    pub fn is_origin(&self) -> bool {
        self.gamma == 0.0 && self.delta == 0.0
    }
}

/// Which formula produced a [`BoundValue`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSource {
    InsertionOnly,
    DeletionOnly,
    Spoke,
    Inner,
    LinearOuter,
    InterpolatedOuter,
    CombinedOuter,
}

impl BoundSource {
    pub const ALL: [BoundSource; 7] = [
        BoundSource::InsertionOnly,
        BoundSource::DeletionOnly,
        BoundSource::Spoke,
        BoundSource::Inner,
        BoundSource::LinearOuter,
        BoundSource::InterpolatedOuter,
        BoundSource::CombinedOuter,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundSource::InsertionOnly => "insertion-only",
            BoundSource::DeletionOnly => "deletion-only",
            BoundSource::Spoke => "spoke",
            BoundSource::Inner => "inner",
            BoundSource::LinearOuter => "linear-outer",
            BoundSource::InterpolatedOuter => "interpolated-outer",
            BoundSource::CombinedOuter => "combined-outer",
        }
    }

    pub fn is_outer(self) -> bool {
        self != BoundSource::Inner
    }
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundSource::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::UnknownSource(s.to_string()))
    }
}

/// A rate bound clamped to `[0, 1]`.
///
/// `raw` keeps the unclamped formula value. It is `None` where the formula is
/// undefined, e.g. a spoke asked for more insertions than its reduced alphabet
/// can absorb.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundValue {
    pub rate: f64,
    pub feasible: bool,
    pub source: BoundSource,
    pub raw: Option<f64>,
}

impl BoundValue {
    pub(crate) fn from_raw(raw: Option<f64>, source: BoundSource, in_closure: bool) -> Self {
        let rate = raw.map_or(0.0, |r| r.clamp(0.0, 1.0));
        let on_zero_level = raw.is_some_and(|r| r.abs() <= EDGE_TOL);
        BoundValue {
            rate,
            feasible: rate > 0.0 || (on_zero_level && in_closure),
            source,
            raw,
        }
    }

    pub(crate) fn with_source(mut self, source: BoundSource) -> Self {
        self.source = source;
        self
    }
}

#[inline]
pub(crate) fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Splits a deletion rate into the spoke index `d = floor(delta q)` and the
/// interpolation weight `alpha = 1 - delta q + d` of that spoke.
///
/// A rate within `1e-12` of a multiple of `1/q` snaps onto it (`alpha = 1`).
pub(crate) fn split_deletion_rate(q: AlphabetSize, delta: f64) -> (u32, f64) {
    let t = delta * q.as_f64();
    let nearest = t.round();
    if (t - nearest).abs() <= EDGE_TOL * q.as_f64() {
        return (nearest as u32, 1.0);
    }
    let d = t.floor();
    (d as u32, 1.0 - t + d)
}

/// `(1+x) log_q(Q/(1+x)) - x log_q((Q-1)/x)`: the rate of a spoke over a
/// reduced alphabet of (possibly fractional) size `reduced`, per unit of
/// reduced block length, at rescaled insertion rate `x`.
///
/// Evaluated as `ln1p(u/(1+x)) + x ln1p(-u/((1+x)(Q-1)))` with
/// `u = Q - 1 - x`, which is algebraically the same but avoids subtracting two
/// O(1) logarithms near the zero level, where the value itself is small.
pub(crate) fn spoke_term(q: AlphabetSize, reduced: f64, x: f64) -> f64 {
    if x == 0.0 {
        // same expression as the deletion-only curve, so breakpoints agree exactly
        return reduced.ln() / q.ln();
    }
    let u = reduced - 1.0 - x;
    let head = (u / (1.0 + x)).ln_1p();
    let tail = x * (-u / ((1.0 + x) * (reduced - 1.0))).ln_1p();
    (head + tail) / q.ln()
}

/// `H_q(x) = x log_q(q-1) - x log_q x - (1-x) log_q(1-x)`.
pub fn q_ary_entropy(x: f64, q: AlphabetSize) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!(
            "entropy argument {x} outside [0, 1]"
        )));
    }
    Ok(entropy_unchecked(x, q))
}

pub(crate) fn entropy_unchecked(x: f64, q: AlphabetSize) -> f64 {
    (x * (q.as_f64() - 1.0).ln() - xlnx(x) - xlnx(1.0 - x)) / q.ln()
}

/// Maximum insertion rate on the closure of the resilience region at deletion
/// rate `delta`, or `None` when `delta > 1 - 1/q`.
///
/// This is the piecewise-linear zero level of the spokes: at `delta = d/q` it
/// equals `(1 - d/q)(q - d - 1)`, and it is linear in between.
pub fn resilience_gamma_limit(q: AlphabetSize, delta: f64) -> Option<f64> {
    if delta < 0.0 || delta > q.max_delta() + EDGE_TOL {
        return None;
    }
    let qf = q.as_f64();
    let (d, alpha) = split_deletion_rate(q, delta);
    if d + 1 >= q.get() {
        return Some(0.0);
    }
    let df = d as f64;
    let vertex = |k: f64| (1.0 - k / qf) * (qf - k - 1.0);
    Some(alpha * vertex(df) + (1.0 - alpha) * vertex(df + 1.0))
}

pub(crate) fn in_resilience_closure(q: AlphabetSize, gamma: f64, delta: f64) -> bool {
    resilience_gamma_limit(q, delta).is_some_and(|limit| gamma <= limit + EDGE_TOL)
}

/// Outer bound for codes facing insertions only.
pub fn insertion_only_bound(q: AlphabetSize, gamma: f64) -> Result<BoundValue> {
    let point = ErrorPoint::new(q, gamma, 0.0)?;
    let g = point.gamma;
    let raw = if g == 0.0 {
        1.0
    } else if g == q.max_gamma() {
        0.0
    } else {
        let qf = q.as_f64();
        1.0 - q.log(g + 1.0) - g * (q.log((g + 1.0) / g) - q.log(qf / (qf - 1.0)))
    };
    Ok(BoundValue::from_raw(
        Some(raw),
        BoundSource::InsertionOnly,
        true,
    ))
}

/// Deletion-only outer bound: alphabet reduction at `delta = d/q`, time-shared
/// linearly between consecutive breakpoints.
pub fn deletion_only_piecewise_bound(q: AlphabetSize, delta: f64) -> Result<BoundValue> {
    let point = ErrorPoint::new(q, 0.0, delta)?;
    let delta = point.delta;
    let in_closure = delta <= q.max_delta() + EDGE_TOL;
    if delta >= q.max_delta() - EDGE_TOL {
        return Ok(BoundValue::from_raw(
            Some(0.0),
            BoundSource::DeletionOnly,
            in_closure,
        ));
    }
    let qf = q.as_f64();
    // (1 - d/q)(1 - log_q(q/(q-d))) = (1 - d/q) log_q(q-d), written the way
    // the spoke evaluates it so the two agree bit for bit
    let at_breakpoint = |d: f64| (1.0 - d / qf) * ((qf - d).ln() / q.ln());
    let (d, alpha) = split_deletion_rate(q, delta);
    let df = d as f64;
    let raw = if alpha == 1.0 {
        at_breakpoint(df)
    } else {
        alpha * at_breakpoint(df) + (1.0 - alpha) * at_breakpoint(df + 1.0)
    };
    Ok(BoundValue::from_raw(
        Some(raw),
        BoundSource::DeletionOnly,
        in_closure,
    ))
}

/// Outer bound at deletion rate exactly `d/q`, as a function of the insertion
/// rate `gamma_prime = gamma / (1 - d/q)` measured on the reduced block length.
///
/// Past the zero level `gamma_prime = q - d - 1` the formula turns upward
/// again; there the bound is 0 and `raw` is `None`.
pub fn spoke_bound(q: AlphabetSize, d: u32, gamma_prime: f64) -> Result<BoundValue> {
    if d >= q.get() {
        return Err(Error::domain(format!(
            "spoke index {d} outside 0..{}",
            q.get()
        )));
    }
    if gamma_prime.is_nan() || gamma_prime < 0.0 || gamma_prime.is_infinite() {
        return Err(Error::domain(format!(
            "rescaled insertion rate {gamma_prime} must be >= 0"
        )));
    }
    let reduced = (q.get() - d) as f64;
    let keep = 1.0 - d as f64 / q.as_f64();
    let in_closure = in_resilience_closure(q, gamma_prime * keep, d as f64 / q.as_f64());
    let zero_level = reduced - 1.0;
    let raw = if gamma_prime > zero_level {
        None
    } else if gamma_prime == zero_level {
        Some(0.0)
    } else {
        Some(keep * spoke_term(q, reduced, gamma_prime))
    };
    Ok(BoundValue::from_raw(raw, BoundSource::Spoke, in_closure))
}

/// Upper end of the convexity domain in `gamma` at deletion rate `delta`:
/// `(1 - delta)(q - q delta - 1)`.
pub(crate) fn f_gamma_limit(q: AlphabetSize, delta: f64) -> f64 {
    let qf = q.as_f64();
    ((1.0 - delta) * (qf - qf * delta - 1.0)).max(0.0)
}

fn check_f_domain(q: AlphabetSize, gamma: f64, delta: f64) -> Result<()> {
    if !(0.0..=q.max_delta() + EDGE_TOL).contains(&delta) {
        return Err(Error::domain(format!("delta {delta} outside [0, 1 - 1/q]")));
    }
    let limit = f_gamma_limit(q, delta);
    if !(0.0..=limit + EDGE_TOL).contains(&gamma) {
        return Err(Error::domain(format!(
            "gamma {gamma} outside [0, {limit}] at delta {delta}"
        )));
    }
    Ok(())
}

/// The spoke formula extended to real `delta`:
/// `(1-delta) [(1+g') log_q(q(1-delta)/(g'+1)) - g' log_q((q(1-delta)-1)/g')]`
/// with `g' = gamma / (1 - delta)`.
pub fn f_value(q: AlphabetSize, gamma: f64, delta: f64) -> Result<f64> {
    check_f_domain(q, gamma, delta)?;
    let keep = 1.0 - delta;
    Ok(keep * spoke_term(q, q.as_f64() * keep, gamma / keep))
}

/// Symmetric 2x2 matrix, ordered `(gamma, delta)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Hessian2 {
    pub h11: f64,
    pub h12: f64,
    pub h21: f64,
    pub h22: f64,
}

impl Hessian2 {
    pub fn trace(&self) -> f64 {
        self.h11 + self.h22
    }

    pub fn det(&self) -> f64 {
        self.h11 * self.h22 - self.h12 * self.h21
    }

    /// Discriminant of the characteristic polynomial, `trace^2 - 4 det`.
    pub fn discriminant(&self) -> f64 {
        let t = self.trace();
        t * t - 4.0 * self.det()
    }

    /// Both eigenvalues are real and nonnegative up to `tol`.
    pub fn is_psd(&self, tol: f64) -> bool {
        self.trace() >= -tol && self.det() >= -tol && self.discriminant() >= -tol
    }
}

/// Analytic Hessian of [`f_value`] on the strict interior of its domain.
pub fn f_hessian(q: AlphabetSize, gamma: f64, delta: f64) -> Result<Hessian2> {
    check_f_domain(q, gamma, delta)?;
    if gamma <= 0.0 || delta >= q.max_delta() || gamma >= f_gamma_limit(q, delta) {
        return Err(Error::domain(format!(
            "Hessian is singular on the boundary (gamma={gamma}, delta={delta})"
        )));
    }
    let qf = q.as_f64();
    let ln_q = q.ln();
    let keep = 1.0 - delta;
    let slack = qf - qf * delta - 1.0;
    let h11 = keep / (gamma * (keep + gamma) * ln_q);
    let h12 = (gamma + keep * keep * qf) / (keep * (keep + gamma) * slack * ln_q);
    let h22 = (keep.powi(3) * qf * qf * (keep + 2.0 * gamma)
        + (2.0 * keep * qf - 1.0) * (gamma * gamma - gamma * keep - keep * keep))
        / (keep * keep * (keep + gamma) * slack * slack * ln_q);
    Ok(Hessian2 {
        h11,
        h12,
        h21: h12,
        h22,
    })
}

/// Random-code inner bound
/// `1 - (1-delta+gamma) H_q(gamma/(1-delta+gamma)) - H_q(delta) + gamma log_q(q-1)`.
pub fn inner_bound(q: AlphabetSize, gamma: f64, delta: f64) -> Result<BoundValue> {
    let point = ErrorPoint::new(q, gamma, delta)?;
    if point.delta > q.max_delta() + EDGE_TOL {
        return Err(Error::domain(format!("delta {delta} outside [0, 1 - 1/q]")));
    }
    let (g, del) = (point.gamma, point.delta.min(q.max_delta()));
    let span = 1.0 - del + g;
    let raw = 1.0 - span * entropy_unchecked(g / span, q) - entropy_unchecked(del, q)
        + g * q.log(q.as_f64() - 1.0);
    Ok(BoundValue::from_raw(
        Some(raw),
        BoundSource::Inner,
        in_resilience_closure(q, g, del),
    ))
}
