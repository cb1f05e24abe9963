//! Monte Carlo experiments comparing sampled laws with exact expectations.
//!
//! Every experiment returns an [`ExperimentReport`]: the exact expected
//! probabilities with the computation each came from, the observed
//! histogram, chi-square and total-variation statistics, and named checks
//! against the constants in [`thresholds`]. Samples are split into chunks
//! with their own random streams, so reports depend only on the seed and
//! the parameters.

mod report;
mod runs;
mod stats;
pub mod thresholds;

pub use report::{Check, ExperimentReport, Parameters, Series, Status};
pub use runs::{
    contains, core_sum_check, degree3_sum_check, exp_containment, exp_core, exp_degree, exp_free, exp_growth,
    exp_invariance, exp_uniform, histogram, run_samples, InvarianceKind, InvarianceParams, UNRESOLVED,
};
pub use stats::{count_of, frequency, goodness_of_fit, half_width, total, two_sample, Bin, Expected, Statistics, TAIL};
