//! Isotropic correlation models with dependence classification.
//!
//! Two families are first-class: the squared-exponential model and the
//! generalized Cauchy (generalized Linnik) model
//! `(1 + r^sigma)^{-theta}`. The latter decays like `r^{-alpha} L(r)` with
//! `alpha = sigma * theta` and the exact slowly varying factor
//! `L(r) = (1 + r^{-sigma})^{-theta}`, which the long-range normalizations
//! use at finite r.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum CovarianceModel {
    /// exp(-r^2)
    GaussianExp,
    /// (1 + r^sigma)^{-theta}, sigma in (0, 2], theta > 0
    GeneralizedCauchy { sigma: f64, theta: f64 },
}

/// Dependence regime of the model relative to dimension d and Hermite
/// rank kappa: short-range iff sigma*theta*kappa > d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dependence {
    ShortRange,
    LongRange,
    Boundary,
}

impl CovarianceModel {
    pub fn generalized_cauchy(sigma: f64, theta: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma <= 2.0) {
            return Err(Error::Domain(format!(
                "generalized Cauchy requires sigma in (0,2], got {sigma}"
            )));
        }
        if !(theta > 0.0) {
            return Err(Error::Domain(format!(
                "generalized Cauchy requires theta > 0, got {theta}"
            )));
        }
        Ok(Self::GeneralizedCauchy { sigma, theta })
    }

    /// Validates parameter ranges (used after deserializing configs).
    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::GaussianExp => Ok(()),
            Self::GeneralizedCauchy { sigma, theta } => {
                Self::generalized_cauchy(sigma, theta).map(|_| ())
            }
        }
    }

    /// Correlation at lag r >= 0.
    pub fn evaluate(&self, r: f64) -> f64 {
        debug_assert!(r >= 0.0);
        match *self {
            Self::GaussianExp => (-r * r).exp(),
            Self::GeneralizedCauchy { sigma, theta } => (1.0 + r.powf(sigma)).powf(-theta),
        }
    }

    /// Long-range decay exponent alpha = sigma * theta, when the model has
    /// a power-law tail.
    pub fn long_range_exponent(&self) -> Option<f64> {
        match *self {
            Self::GaussianExp => None,
            Self::GeneralizedCauchy { sigma, theta } => Some(sigma * theta),
        }
    }

    /// Exact slowly varying factor L(r) in the decomposition
    /// evaluate(r) = r^{-alpha} L(r), valid for r > 0. L(r) -> 1 as
    /// r -> infinity. Identically 1 for models without a power tail.
    pub fn slowly_varying(&self, r: f64) -> f64 {
        match *self {
            Self::GaussianExp => 1.0,
            Self::GeneralizedCauchy { sigma, theta } => {
                debug_assert!(r > 0.0, "L(r) is defined for r > 0");
                (1.0 + r.powf(-sigma)).powf(-theta)
            }
        }
    }

    /// Dependence classification for dimension d and Hermite rank kappa.
    pub fn classify_dependence(&self, d: u32, kappa: u32) -> Dependence {
        assert!(kappa >= 1, "kappa must be >= 1");
        match *self {
            Self::GaussianExp => Dependence::ShortRange,
            Self::GeneralizedCauchy { sigma, theta } => {
                let product = sigma * theta * kappa as f64;
                let df = d as f64;
                if product > df {
                    Dependence::ShortRange
                } else if product < df {
                    Dependence::LongRange
                } else {
                    Dependence::Boundary
                }
            }
        }
    }
}
