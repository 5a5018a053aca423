//! Confidence bands for one-dimensional optimal transport maps.
//!
//! The map `T̂ = F̂_Q⁻¹ ∘ F̂_P` is built from kernel-smoothed CDFs. A smoothed
//! bootstrap calibrates a uniform band over a grid, and an empirical bootstrap
//! gives pointwise intervals from the unsmoothed estimate.

pub mod bands;
pub mod bootstrap;
pub mod cli;
pub mod dist_est;
pub mod error;
pub mod grid;
pub mod io;
pub mod kernels;
pub mod otmap;
pub mod rng;
pub mod simulation;
pub mod special;

pub use error::{Error, Result};
