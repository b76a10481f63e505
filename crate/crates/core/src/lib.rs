//! Simulation of vector Gaussian random fields and the sojourn measures
//! of their Student and Fisher-Snedecor transforms.
//!
//! The crate covers the full pipeline behind the limit-theorem
//! experiments:
//!
//! * [`special`]: incomplete beta, marginal CDFs, and the closed-form
//!   constants of the limit normalizations;
//! * [`covariance`]: isotropic correlation models with long-range
//!   classification and the exact slowly varying factor;
//! * [`simulate`]: circulant-embedding synthesis of scalar and vector
//!   Gaussian fields, deterministic child seeding, cross-correlation
//!   mixing;
//! * [`derived`]: pointwise Student / Fisher-Snedecor / chi-square
//!   transforms;
//! * [`geometry`]: observation windows, pair-distance densities, and the
//!   spatial/spectral window constants;
//! * [`hermite`]: multidimensional Hermite expansions, coefficient
//!   estimation, and rank detection;
//! * [`excursion`]: excursion-area measurement and the per-theorem
//!   normalizations;
//! * [`experiment`]: the replication harness with deterministic seeding
//!   and CSV outputs;
//! * [`stats`]: KS normality testing and Q-Q export.

pub mod bessel;
pub mod covariance;
pub mod derived;
pub mod error;
pub mod excursion;
pub mod experiment;
pub mod geometry;
pub mod grid;
pub mod hermite;
pub mod quad;
pub mod simulate;
pub mod special;
pub mod stats;

pub use error::{Error, Result};
