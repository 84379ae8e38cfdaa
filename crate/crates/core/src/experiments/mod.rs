//! Surface grids, Monte Carlo runs and the self-check suite.

mod mc;
mod surface;
mod verify;

pub use mc::{run_inner_bound_mc, run_inner_bound_mc_with_cap, McConfig, McReport, TrialReport};
pub use surface::{emit_surface, evaluate_bound, OutputFormat, SurfaceCell, SurfaceGrid};
pub use verify::{run_verify_suite, CheckOutcome};
