//! Random generation: exact draws, Boltzmann-type samplers for triangulations
//! with a boundary, the peeling process and its core decomposition.

mod core;
mod free;
mod inflate;
mod laws;
mod peel;
mod rng;
mod uniform;

pub use self::core::{certificate_horizon, core_classify, uipt_type3_ball, CoreOutcome, Type3Ball};
pub use free::{sample_free, FreeSample};
pub use inflate::edge_inflate;
pub use laws::{peel_step_distribution, PeelEvent, PeelVariant, Side};
pub use peel::{peel_once, peel_until_ball, uipt_ball, uipt_root_degree, PeelState, Policy, TraceRecord};
pub use rng::ExactRng;
pub use uniform::{sample_uniform, sample_uniform_sphere, UniformSampler, UNIFORM_BOUND};
