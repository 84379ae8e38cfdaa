//! Rate bounds for list-decodable insertion-deletion codes.
//!
//! The crate evaluates the known outer bounds (insertion-only, deletion-only,
//! the `d/q` spokes, the linear resilience-polygon bound and the convex
//! interpolation between neighboring spokes) and the random-code inner bound
//! for any alphabet size `q`, insertion rate `gamma` and deletion rate `delta`.
//!
//! Every closed form is backed by an exact brute-force oracle in [`oracles`]
//! that can be run on small instances, and [`experiments`] turns the bounds
//! into surface grids and seeded Monte Carlo runs.
//!
//! ```
//! use insdel_bounds::{combined_outer_bound, inner_bound, AlphabetSize};
//!
//! let q = AlphabetSize::new(5).unwrap();
//! let outer = combined_outer_bound(q, 0.5, 0.2).unwrap();
//! let inner = inner_bound(q, 0.5, 0.2).unwrap();
//! assert!(inner.rate <= outer.value.rate);
//! ```

pub mod bounds;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod optimizer;
pub mod oracles;

pub use bounds::{
    deletion_only_piecewise_bound, f_hessian, f_value, inner_bound, insertion_only_bound,
    q_ary_entropy, resilience_gamma_limit, spoke_bound, AlphabetSize, BoundSource, BoundValue,
    ErrorPoint, Hessian2,
};
pub use error::{Error, Result};
pub use experiments::{
    emit_surface, run_inner_bound_mc, McConfig, McReport, OutputFormat, SurfaceGrid,
};
pub use geometry::{linear_outer_bound, ResiliencePolygon, ScalingResult};
pub use optimizer::{
    combined_outer_bound, interpolated_bound_at_split, interpolated_outer_bound, optimal_gamma0,
    CombinedOuterBound, Gamma0Method, GammaSplit, InterpolationSetup,
};
pub use oracles::{
    alphabet_reduction, check_list_decodable, containment_probability, enumerate_ball, lcs,
    reachable, supersequence_count_exact_length, two_segment_reduction, BallSpec, EnumerationCap,
    LengthMode, SmallCode, Verdict, Word,
};
