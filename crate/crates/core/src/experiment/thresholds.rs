//! Pass/fail thresholds of the experiments, defined once and referred to by
//! name from reports and tests.

/// Largest total-variation distance accepted between two empirical laws
/// that should coincide.
pub const INVARIANCE_TV: f64 = 0.02;

/// Largest total-variation distance accepted between an empirical law and
/// its exact counterpart.
pub const LAW_TV: f64 = 0.02;

/// Absolute tolerance on the frequency of an infinite root core.
pub const CORE_INFINITE_TOL: f64 = 0.01;

/// Absolute tolerance on the frequency of a root core with 3 vertices.
pub const CORE_SIZE3_TOL: f64 = 0.01;

/// Absolute tolerance on the frequency of a root core with 4 vertices.
pub const CORE_SIZE4_TOL: f64 = 0.005;

/// Absolute tolerance on the frequency of root degree 3 in the type III
/// limit.
pub const DEGREE3_TOL: f64 = 0.01;

/// Absolute tolerance on the frequency of an empty free 2-gon.
pub const FREE_EMPTY_TOL: f64 = 0.01;

/// Absolute tolerance on containment frequencies of rigid configurations.
pub const CONTAINMENT_TOL: f64 = 0.01;

/// Absolute tolerance on the mean number of restarts of the type III ball
/// sampler.
pub const RESTARTS_TOL: f64 = 0.05;

/// Smallest chi-square p-value accepted for the uniform samplers.
pub const UNIFORM_P_MIN: f64 = 1e-3;

/// Unresolved fraction above which an experiment run fails.
pub const RUN_UNRESOLVED_MAX: f64 = 0.05;

/// Unresolved fraction allowed in acceptance runs.
pub const ACCEPT_UNRESOLVED_MAX: f64 = 0.01;

/// Largest degree listed individually in the type III degree histogram.
pub const DEGREE3_K_MAX: usize = 12;

/// Degree at which the type II tail envelope constant is fitted.
pub const DEGREE_TAIL_FIT_K: usize = 10;

/// Largest degree at which the type II tail is checked against the
/// envelope.
pub const DEGREE_TAIL_K_MAX: usize = 40;

/// Per-step ratio `25/27` of the type II tail envelope
/// `c * (25/27)^((k-1)/2)`.
pub const DEGREE_TAIL_RATIO: (u32, u32) = (25, 27);

/// Largest core size listed individually in the core histogram.
pub const CORE_K_MAX: usize = 8;

/// Truncation point and tolerance of the exact sum of the core size law.
pub const CORE_SUM_N: usize = 10_000;
pub const CORE_SUM_TOL: f64 = 1e-4;

/// Truncation point and tolerance of the exact sum of the type III degree
/// law.
pub const DEGREE3_SUM_K: usize = 10_000;
pub const DEGREE3_SUM_TOL: f64 = 1e-3;

/// Largest free sample size listed individually in the size histogram.
pub const FREE_SIZE_MAX: usize = 4;

/// Fewest samples an experiment accepts.
pub const MIN_SAMPLES: usize = 1_000;

/// Vertex bound of the sphere census used by the re-rooting experiments.
pub const INVARIANCE_VERTEX_MAX: usize = 6;

/// Largest radius of the growth experiment.
pub const GROWTH_R_MAX: usize = 20;

/// Fewest expected counts per chi-square bin after pooling.
pub const CHI_SQUARE_MIN_EXPECTED: f64 = 5.0;

/// Normal quantile of the two-sided 95% confidence intervals.
pub const Z95: f64 = 1.96;
