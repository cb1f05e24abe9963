//! Random planar triangulations of types II and III.
//!
//! The crate is organised in four layers:
//!
//! - [`exact`]: arbitrary-precision counting formulas, partition functions and
//!   the critical constants, all as exact integers or rationals. Irrational
//!   prefactors of the asymptotic constants are factored out, so every
//!   probability that appears downstream is an exact rational.
//! - [`map`]: rooted maps stored as half-edge rotation systems, validation,
//!   canonical codes, the brute-force census, balls, re-rooting, the
//!   3-connected core and the face tree.
//! - [`sample`]: exact uniform samplers, critical Boltzmann ("free")
//!   samplers, and the peeling sampler of the type II uniform infinite planar
//!   triangulation, with type III obtained through the core transform.
//! - [`experiment`]: the Monte Carlo harness comparing empirical laws against
//!   the exact expectations.

pub mod error;
pub mod exact;
pub mod experiment;
pub mod map;
pub mod sample;

pub use error::{Error, Result};
pub use exact::TriType;
pub use map::RootedMap;
pub use sample::ExactRng;
