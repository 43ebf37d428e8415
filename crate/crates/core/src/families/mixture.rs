//! Two-component normal mixture with parameters `(w, μ₁, σ₁, μ₂, σ₂)`.
//!
//! The unconstrained likelihood is unbounded: sending a component mean to
//! an observation and its σ to zero makes the log-likelihood diverge like
//! `−ln σ`, which is why fits go through the constrained solver in the
//! estimation module.

use rand::Rng;
use rand_distr::StandardNormal;

use super::normal::sample_reals;
use super::{Family, ObservationSpace, Sample};
use crate::Result;

const LN_2PI: f64 = 1.837_877_066_409_345_4;

fn ln_normal(x: f64, mu: f64, sigma: f64) -> f64 {
    let z = (x - mu) / sigma;
    -0.5 * LN_2PI - sigma.ln() - 0.5 * z * z
}

#[derive(Debug, Clone, Default)]
pub struct NormalMixture;

impl NormalMixture {
    /// `ln(w·N(x; μ₁, σ₁²) + (1−w)·N(x; μ₂, σ₂²))` via log-sum-exp.
    pub fn ln_mixture_density(x: f64, theta: &[f64]) -> f64 {
        let (w, mu1, s1, mu2, s2) = (theta[0], theta[1], theta[2], theta[3], theta[4]);
        let a = w.ln() + ln_normal(x, mu1, s1);
        let b = (1.0 - w).ln() + ln_normal(x, mu2, s2);
        let hi = a.max(b);
        if hi == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        hi + ((a - hi).exp() + (b - hi).exp()).ln()
    }
}

impl Family for NormalMixture {
    fn name(&self) -> &str {
        "normal-mixture"
    }

    fn param_dim(&self) -> usize {
        5
    }

    fn param_domain(&self) -> Vec<(f64, f64)> {
        vec![
            (0.0, 1.0),
            (f64::NEG_INFINITY, f64::INFINITY),
            (0.0, f64::INFINITY),
            (f64::NEG_INFINITY, f64::INFINITY),
            (0.0, f64::INFINITY),
        ]
    }

    fn observation_space(&self) -> ObservationSpace {
        ObservationSpace::Real
    }

    fn log_density(&self, x: f64, theta: &[f64]) -> f64 {
        Self::ln_mixture_density(x, theta)
    }

    fn sample(&self, theta: &[f64], n: usize, seed: u64) -> Result<Sample> {
        let (w, mu1, s1, mu2, s2) = (theta[0], theta[1], theta[2], theta[3], theta[4]);
        sample_reals(self, theta, n, seed, |rng| {
            let z: f64 = rng.sample(StandardNormal);
            if rng.random::<f64>() < w {
                mu1 + s1 * z
            } else {
                mu2 + s2 * z
            }
        })
    }

    fn default_start(&self, sample: &Sample) -> Result<Vec<f64>> {
        let values = sample.reals()?;
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let sd = (values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n).sqrt().max(1e-6);
        Ok(vec![0.5, mean - sd, sd, mean + sd, sd])
    }

    fn multimodal(&self) -> bool {
        true
    }
}
