//! Gamma family with unknown shape and scale fixed at one.
//!
//! The shape-only parameterization keeps the mean equal to the shape, so
//! the moment estimator is just the sample mean.

use rand_distr::{Distribution, Gamma};
use statrs::function::gamma::{digamma, ln_gamma};

use super::normal::sample_reals;
use super::{Family, ObservationSpace, Sample};
use crate::Result;

/// Gamma(k, 1) with unknown shape `k > 0`.
#[derive(Debug, Clone, Default)]
pub struct GammaShape;

impl Family for GammaShape {
    fn name(&self) -> &str {
        "gamma-shape"
    }

    fn param_dim(&self) -> usize {
        1
    }

    fn param_domain(&self) -> Vec<(f64, f64)> {
        vec![(0.0, f64::INFINITY)]
    }

    fn observation_space(&self) -> ObservationSpace {
        ObservationSpace::PositiveReal
    }

    fn log_density(&self, x: f64, theta: &[f64]) -> f64 {
        if x <= 0.0 {
            return f64::NEG_INFINITY;
        }
        let k = theta[0];
        (k - 1.0) * x.ln() - x - ln_gamma(k)
    }

    fn sample(&self, theta: &[f64], n: usize, seed: u64) -> Result<Sample> {
        let gamma = Gamma::new(theta[0], 1.0)
            .map_err(|e| crate::Error::InvalidArgument(format!("gamma sampler: {e}")))?;
        sample_reals(self, theta, n, seed, |rng| gamma.sample(rng))
    }

    fn analytic_score(&self, x: f64, theta: &[f64]) -> Option<Vec<f64>> {
        if x <= 0.0 {
            return None;
        }
        Some(vec![x.ln() - digamma(theta[0])])
    }

    fn default_start(&self, sample: &Sample) -> Result<Vec<f64>> {
        let values = sample.reals()?;
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        Ok(vec![mean.max(1e-3)])
    }
}
