//! Convex interpolation between neighboring spokes.
//!
//! For `d = floor(delta q)` and `alpha = 1 - delta q + d` the deletion budget is
//! split as `alpha d/q + (1-alpha)(d+1)/q`, and the insertions as
//! `w0 gamma0 + w1 gamma1 = gamma` with `w0 = alpha (1 - d/q)` and
//! `w1 = (1-alpha)(1 - (d+1)/q)`. The bound is the best such split of
//!
//! ```text
//! w0 * S(q-d, gamma0) + w1 * S(q-d-1, gamma1)
//! S(Q, x) = (1+x) log_q(Q/(1+x)) - x log_q((Q-1)/x)
//! ```
//!
//! `S(Q, .)` is convex with its minimum 0 at `x = Q - 1`. Insertions beyond
//! that point are wasted on the spoke, so its contribution is capped at 0 there.
//! This also makes the split objective convex in `gamma0`.

use serde::Serialize;

use crate::bounds::{
    in_resilience_closure, split_deletion_rate, spoke_term, AlphabetSize, BoundSource, BoundValue,
    ErrorPoint, EDGE_TOL,
};
use crate::error::{Error, Result};
use crate::geometry::linear_outer_bound;
use crate::{deletion_only_piecewise_bound, insertion_only_bound};

/// Tolerance accepted on the stationarity residual of a closed-form optimum.
pub const STATIONARITY_TOL: f64 = 1e-9;

/// Final interval width of the golden-section refinement.
const GOLDEN_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InterpolationSetup {
    pub q: AlphabetSize,
    pub d: u32,
    pub alpha: f64,
    /// `alpha (1 - d/q)`
    pub n0_weight: f64,
    /// `(1 - alpha)(1 - (d+1)/q)`
    pub n1_weight: f64,
}

impl InterpolationSetup {
    pub fn new(q: AlphabetSize, delta: f64) -> Result<Self> {
        if !(0.0..=q.max_delta() + EDGE_TOL).contains(&delta) {
            return Err(Error::domain(format!("delta {delta} outside [0, 1 - 1/q]")));
        }
        let qf = q.as_f64();
        let (d, alpha) = split_deletion_rate(q, delta);
        let d = d.min(q.get() - 1);
        let df = d as f64;
        let n1_weight = if alpha == 1.0 {
            0.0
        } else {
            (1.0 - alpha) * (1.0 - (df + 1.0) / qf)
        };
        Ok(InterpolationSetup {
            q,
            d,
            alpha,
            n0_weight: alpha * (1.0 - df / qf),
            n1_weight,
        })
    }

    /// Reduced alphabet sizes `(q - d, q - d - 1)`.
    pub fn reduced(&self) -> (u32, u32) {
        let r0 = self.q.get() - self.d;
        (r0, r0.saturating_sub(1))
    }

    /// Largest total insertion rate both spokes can absorb before hitting
    /// zero rate. This is the `gamma` coordinate of the boundary of `F_q`.
    pub fn capacity(&self) -> f64 {
        let (r0, r1) = self.reduced();
        let mut cap = self.n0_weight * (r0 as f64 - 1.0);
        if self.n1_weight > 0.0 && r1 >= 1 {
            cap += self.n1_weight * (r1 as f64 - 1.0);
        }
        cap
    }

    /// `gamma1` implied by the linear constraint.
    pub fn gamma1(&self, gamma: f64, gamma0: f64) -> f64 {
        if self.n1_weight == 0.0 {
            0.0
        } else {
            (gamma - self.n0_weight * gamma0) / self.n1_weight
        }
    }
}

/// How [`optimal_gamma0`] arrived at its split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Gamma0Method {
    /// `gamma = 0`: nothing to distribute.
    NoInsertions,
    /// `delta = d/q`: a single spoke carries everything.
    SingleSpoke,
    /// The second spoke has a unary alphabet and takes no insertions.
    DegenerateSpoke,
    /// `gamma` meets or exceeds what both spokes absorb; the bound is 0.
    BeyondResilience,
    /// The printed closed form passed the interval and stationarity checks.
    PrintedClosedForm,
    /// Positive root of the stationarity quadratic.
    StationaryRoot,
    /// Closed forms failed or were clamped; golden-section search decided.
    NumericSearch,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GammaSplit {
    pub gamma0: f64,
    pub gamma1: f64,
    pub objective: f64,
    pub method: Gamma0Method,
    /// Value of the printed closed form, kept for diagnostics whether or not it
    /// was usable.
    pub printed_candidate: Option<f64>,
}

/// Spoke contribution `S(Q, x)` with the zero-level cap.
fn capped_term(q: AlphabetSize, reduced: u32, x: f64) -> f64 {
    let zero_level = reduced as f64 - 1.0;
    if x >= zero_level {
        0.0
    } else {
        spoke_term(q, reduced as f64, x)
    }
}

/// Bound value for an explicit split `gamma0` (with `gamma1` implied).
pub fn interpolated_bound_at_split(
    q: AlphabetSize,
    gamma: f64,
    delta: f64,
    gamma0: f64,
) -> Result<f64> {
    let point = ErrorPoint::new(q, gamma, delta)?;
    let setup = InterpolationSetup::new(q, point.delta)?;
    if gamma0.is_nan() || gamma0 < 0.0 {
        return Err(Error::domain(format!("gamma0 {gamma0} must be >= 0")));
    }
    // Insertions left for the second spoke. A residue at rounding level is
    // zero; testing it before dividing by a possibly tiny n1_weight keeps the
    // rounding from being blown up.
    let residue = point.gamma - setup.n0_weight * gamma0;
    let gamma1 = if residue.abs() <= EDGE_TOL * point.gamma.max(1.0) {
        0.0
    } else if setup.n1_weight == 0.0 {
        return Err(Error::domain(format!(
            "single spoke needs gamma0 = {}, got {gamma0}",
            point.gamma / setup.n0_weight
        )));
    } else {
        residue / setup.n1_weight
    };
    if gamma1 < 0.0 {
        return Err(Error::domain(format!(
            "gamma0 {gamma0} forces gamma1 = {gamma1} < 0"
        )));
    }
    let (r0, r1) = setup.reduced();
    for (reduced, x) in [(r0, gamma0), (r1, gamma1)] {
        if reduced <= 1 && x > 0.0 {
            return Err(Error::DegenerateSpoke {
                reduced: reduced as usize,
                gamma: x,
            });
        }
    }
    let mut value = setup.n0_weight * capped_term(q, r0, gamma0);
    if setup.n1_weight > 0.0 {
        value += setup.n1_weight * capped_term(q, r1, gamma1);
    }
    Ok(value)
}

/// Residual of `(1 + 1/gamma1)(1 - 1/(q-d-1)) = (1 + 1/gamma0)(1 - 1/(q-d))`.
pub fn stationarity_residual(setup: &InterpolationSetup, gamma0: f64, gamma1: f64) -> f64 {
    let (r0, r1) = setup.reduced();
    let lhs = (1.0 + 1.0 / gamma1) * (1.0 - 1.0 / r1 as f64);
    let rhs = (1.0 + 1.0 / gamma0) * (1.0 - 1.0 / r0 as f64);
    lhs - rhs
}

/// The closed form `(A - sqrt(B^2 + C)) / (2 alpha (q - d))` with the printed
/// coefficients. `None` when the square root is of a negative number.
pub fn printed_closed_form(setup: &InterpolationSetup, gamma: f64) -> Option<f64> {
    let (q, d, a, g) = (setup.q.as_f64(), setup.d as f64, setup.alpha, gamma);
    let (q2, q3, d2, d3) = (q * q, q * q * q, d * d, d * d * d);
    let big_a = 3.0 * a * d2 * q + d2 * q - 3.0 * a * d * q2 - 2.0 * d * q2
        + 4.0 * a * d * q
        + 2.0 * d * q
        + a * q3
        - 2.0 * a * q2
        + q3
        - 2.0 * q2
        + g * q
        + q
        - a * d3
        - 2.0 * a * d2;
    let big_b = a * d3 + 2.0 * a * d2 - 3.0 * a * d2 * q - d2 * q + 3.0 * a * d * q2 + 2.0 * d * q2
        - 4.0 * a * d * q
        - 2.0 * d * q
        - a * q3
        + 2.0 * a * q2
        - q3
        + 2.0 * q2
        - g * q
        - q;
    let big_c = 4.0
        * (a * q - a * d)
        * (g * d2 * q - 2.0 * g * d * q2 + 2.0 * g * d * q + g * q3 - 2.0 * g * q2);
    let disc = big_b * big_b + big_c;
    if disc < 0.0 {
        return None;
    }
    Some((big_a - disc.sqrt()) / (2.0 * a * (q - d)))
}

/// Positive root of the stationarity system.
///
/// Eliminating `gamma1` between the stationarity relation and the linear
/// constraint leaves
/// `w0 (c0 - c1) u^2 + (w0 c0 + w1 c1 - gamma (c0 - c1)) u - gamma c0 = 0`
/// with `c_j = 1 - 1/Q_j`. The leading coefficient is positive and the
/// constant negative, so exactly one root is positive.
pub fn stationary_root(setup: &InterpolationSetup, gamma: f64) -> Option<f64> {
    let (r0, r1) = setup.reduced();
    if r1 < 2 || setup.n1_weight == 0.0 {
        return None;
    }
    let c0 = 1.0 - 1.0 / r0 as f64;
    let c1 = 1.0 - 1.0 / r1 as f64;
    let a = setup.n0_weight * (c0 - c1);
    let b = setup.n0_weight * c0 + setup.n1_weight * c1 - gamma * (c0 - c1);
    let c = -gamma * c0;
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return None;
    }
    // cancellation-free form of (-b + sqrt(disc)) / 2a
    let root = if b >= 0.0 {
        2.0 * -c / (b + disc.sqrt())
    } else {
        (-b + disc.sqrt()) / (2.0 * a)
    };
    Some(root)
}

/// Golden-section minimization on `[lo, hi]`; returns the argmin and its value.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    // the endpoints may beat the interior probes on a monotone objective
    [(a, f(a)), (b, f(b)), (x1, f1), (x2, f2)]
        .into_iter()
        .min_by(|p, r| p.1.total_cmp(&r.1))
        .unwrap()
}

/// The split of `gamma` between the two neighboring spokes that minimizes the
/// interpolated bound.
pub fn optimal_gamma0(q: AlphabetSize, gamma: f64, delta: f64) -> Result<GammaSplit> {
    let point = ErrorPoint::new(q, gamma, delta)?;
    let setup = InterpolationSetup::new(q, point.delta)?;
    let gamma = point.gamma;
    let (r0, r1) = setup.reduced();
    let (w0, w1) = (setup.n0_weight, setup.n1_weight);

    let split = |gamma0: f64, gamma1: f64, objective: f64, method| GammaSplit {
        gamma0,
        gamma1,
        objective,
        method,
        printed_candidate: None,
    };
    let objective_at = |gamma0: f64| interpolated_bound_at_split(q, gamma, point.delta, gamma0);

    if gamma == 0.0 {
        return Ok(split(
            0.0,
            0.0,
            objective_at(0.0)?,
            Gamma0Method::NoInsertions,
        ));
    }
    let capacity = setup.capacity();
    if gamma >= capacity {
        let gamma0 = (r0 as f64 - 1.0).min(gamma / w0);
        let gamma1 = setup.gamma1(gamma, gamma0).max(0.0);
        return Ok(split(gamma0, gamma1, 0.0, Gamma0Method::BeyondResilience));
    }
    if w1 == 0.0 {
        let gamma0 = gamma / w0;
        return Ok(split(
            gamma0,
            0.0,
            objective_at(gamma0)?,
            Gamma0Method::SingleSpoke,
        ));
    }
    if r1 <= 1 {
        let gamma0 = gamma / w0;
        return Ok(split(
            gamma0,
            0.0,
            objective_at(gamma0)?,
            Gamma0Method::DegenerateSpoke,
        ));
    }

    // Both spokes stay strictly below their zero levels at the optimum.
    let lo = ((gamma - w1 * (r1 as f64 - 1.0)) / w0).max(0.0);
    let hi = (gamma / w0).min(r0 as f64 - 1.0);
    let inside = |u: f64| u >= lo && u <= hi;
    let stationary = |u: f64| {
        let g1 = setup.gamma1(gamma, u);
        u > 0.0 && g1 > 0.0 && stationarity_residual(&setup, u, g1).abs() <= STATIONARITY_TOL
    };

    let printed = printed_closed_form(&setup, gamma);
    let mut result = None;
    if let Some(u) = printed.filter(|&u| inside(u) && stationary(u)) {
        result = Some((u, Gamma0Method::PrintedClosedForm));
    } else if let Some(u) = stationary_root(&setup, gamma).filter(|&u| inside(u) && stationary(u)) {
        result = Some((u, Gamma0Method::StationaryRoot));
    }
    let (gamma0, method) = match result {
        Some(found) => found,
        None => {
            let f = |u: f64| objective_at(u).unwrap_or(f64::INFINITY);
            let (u, _) = golden_section(f, lo, hi, GOLDEN_TOL);
            (u, Gamma0Method::NumericSearch)
        }
    };
    let mut out = split(
        gamma0,
        setup.gamma1(gamma, gamma0),
        objective_at(gamma0)?,
        method,
    );
    out.printed_candidate = printed;
    Ok(out)
}

/// Strongest outer bound: the optimized convex interpolation between the
/// spokes at `floor(delta q)` and `floor(delta q) + 1`.
pub fn interpolated_outer_bound(q: AlphabetSize, gamma: f64, delta: f64) -> Result<BoundValue> {
    let point = ErrorPoint::new(q, gamma, delta)?;
    let in_closure = in_resilience_closure(q, point.gamma, point.delta);
    if point.delta > q.max_delta() + EDGE_TOL {
        return Ok(BoundValue::from_raw(
            None,
            BoundSource::InterpolatedOuter,
            false,
        ));
    }
    let split = optimal_gamma0(q, point.gamma, point.delta)?;
    Ok(BoundValue::from_raw(
        Some(split.objective),
        BoundSource::InterpolatedOuter,
        in_closure,
    ))
}

/// Minimum over every implemented outer bound, plus the individual values.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CombinedOuterBound {
    /// The minimizer, with its own source retained.
    pub value: BoundValue,
    pub candidates: Vec<BoundValue>,
}

pub fn combined_outer_bound(q: AlphabetSize, gamma: f64, delta: f64) -> Result<CombinedOuterBound> {
    let point = ErrorPoint::new(q, gamma, delta)?;
    let mut candidates = vec![
        interpolated_outer_bound(q, point.gamma, point.delta)?,
        linear_outer_bound(q, point.gamma, point.delta)?,
    ];
    if point.delta == 0.0 {
        candidates.push(insertion_only_bound(q, point.gamma)?);
    }
    if point.gamma == 0.0 {
        candidates.push(deletion_only_piecewise_bound(q, point.delta)?);
    }
    let value = *candidates
        .iter()
        .min_by(|a, b| a.rate.total_cmp(&b.rate))
        .expect("at least two candidates");
    Ok(CombinedOuterBound { value, candidates })
}

/// [`combined_outer_bound`] flattened to a value tagged `combined-outer`.
pub(crate) fn combined_value(q: AlphabetSize, gamma: f64, delta: f64) -> Result<BoundValue> {
    Ok(combined_outer_bound(q, gamma, delta)?
        .value
        .with_source(BoundSource::CombinedOuter))
}
