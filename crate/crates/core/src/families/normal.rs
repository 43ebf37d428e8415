//! Normal families: location with known scale, and location–scale.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{Family, ObservationSpace, Sample, SampleMeta};
use crate::{Error, Result};

const LN_2PI: f64 = 1.837_877_066_409_345_4;

/// `N(μ, σ²)` with σ known; the single parameter is the location μ.
#[derive(Debug, Clone)]
pub struct NormalLocation {
    pub sigma: f64,
}

impl NormalLocation {
    pub fn new(sigma: f64) -> Self {
        assert!(sigma > 0.0, "sigma must be positive");
        NormalLocation { sigma }
    }

    pub fn unit_sigma() -> Self {
        NormalLocation { sigma: 1.0 }
    }
}

impl Family for NormalLocation {
    fn name(&self) -> &str {
        "normal-loc"
    }

    fn param_dim(&self) -> usize {
        1
    }

    fn param_domain(&self) -> Vec<(f64, f64)> {
        vec![(f64::NEG_INFINITY, f64::INFINITY)]
    }

    fn observation_space(&self) -> ObservationSpace {
        ObservationSpace::Real
    }

    fn log_density(&self, x: f64, theta: &[f64]) -> f64 {
        let z = (x - theta[0]) / self.sigma;
        -0.5 * LN_2PI - self.sigma.ln() - 0.5 * z * z
    }

    fn sample(&self, theta: &[f64], n: usize, seed: u64) -> Result<Sample> {
        sample_reals(self, theta, n, seed, |rng| {
            let z: f64 = rng.sample(StandardNormal);
            theta[0] + self.sigma * z
        })
    }

    fn analytic_score(&self, x: f64, theta: &[f64]) -> Option<Vec<f64>> {
        Some(vec![(x - theta[0]) / (self.sigma * self.sigma)])
    }

    fn analytic_information(&self, _theta: &[f64]) -> Option<Vec<Vec<f64>>> {
        Some(vec![vec![1.0 / (self.sigma * self.sigma)]])
    }

    fn default_start(&self, _sample: &Sample) -> Result<Vec<f64>> {
        // Starting at zero makes the single Newton step land bit-exactly
        // on Σx/n.
        Ok(vec![0.0])
    }
}

/// `N(μ, σ²)` with both location and scale unknown.
#[derive(Debug, Clone, Default)]
pub struct NormalLocationScale;

impl Family for NormalLocationScale {
    fn name(&self) -> &str {
        "normal"
    }

    fn param_dim(&self) -> usize {
        2
    }

    fn param_domain(&self) -> Vec<(f64, f64)> {
        vec![(f64::NEG_INFINITY, f64::INFINITY), (0.0, f64::INFINITY)]
    }

    fn observation_space(&self) -> ObservationSpace {
        ObservationSpace::Real
    }

    fn log_density(&self, x: f64, theta: &[f64]) -> f64 {
        let (mu, sigma) = (theta[0], theta[1]);
        let z = (x - mu) / sigma;
        -0.5 * LN_2PI - sigma.ln() - 0.5 * z * z
    }

    fn sample(&self, theta: &[f64], n: usize, seed: u64) -> Result<Sample> {
        sample_reals(self, theta, n, seed, |rng| {
            let z: f64 = rng.sample(StandardNormal);
            theta[0] + theta[1] * z
        })
    }

    fn analytic_score(&self, x: f64, theta: &[f64]) -> Option<Vec<f64>> {
        let (mu, sigma) = (theta[0], theta[1]);
        let d = x - mu;
        Some(vec![d / (sigma * sigma), (d * d - sigma * sigma) / (sigma * sigma * sigma)])
    }

    fn analytic_information(&self, theta: &[f64]) -> Option<Vec<Vec<f64>>> {
        let s2 = theta[1] * theta[1];
        Some(vec![vec![1.0 / s2, 0.0], vec![0.0, 2.0 / s2]])
    }

    fn default_start(&self, sample: &Sample) -> Result<Vec<f64>> {
        let values = sample.reals()?;
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
        Ok(vec![mean, var.sqrt().max(1e-6)])
    }
}

/// Shared continuous sampler: seed the stream, draw `n` values, attach
/// provenance.
pub(super) fn sample_reals<F: Family + ?Sized>(
    family: &F,
    theta: &[f64],
    n: usize,
    seed: u64,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> f64,
) -> Result<Sample> {
    if n == 0 {
        return Err(Error::InvalidArgument("sample size must be at least 1".into()));
    }
    if !family.param_ok(theta) {
        return Err(Error::ParameterOutsideDomain {
            family: family.name().to_string(),
            parameter: theta.to_vec(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..n).map(|_| draw(&mut rng)).collect();
    Ok(Sample::from_reals(
        values,
        SampleMeta { family: family.name().to_string(), true_theta: theta.to_vec(), seed },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::log_likelihood;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sampler_is_deterministic() {
        let family = NormalLocation::unit_sigma();
        let a = family.sample(&[0.3], 100, 99).unwrap();
        let b = family.sample(&[0.3], 100, 99).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empirical_mean_is_within_clt_bound() {
        let family = NormalLocation::unit_sigma();
        let n = 100_000;
        let sample = family.sample(&[0.0], n, 2024).unwrap();
        let mean = sample.reals().unwrap().iter().sum::<f64>() / n as f64;
        assert!(mean.abs() < 4.0 / (n as f64).sqrt(), "mean {mean} breaches the 4σ CLT bound");
    }

    #[test]
    fn empty_sample_request_is_rejected() {
        let family = NormalLocationScale;
        assert!(family.sample(&[0.0, 1.0], 0, 1).is_err());
    }

    #[test]
    fn location_scale_score_matches_finite_differences() {
        let family = NormalLocationScale;
        let sample = family.sample(&[0.5, 2.0], 40, 11).unwrap();
        let theta = [0.2, 1.7];
        let s = crate::families::score(&family, &sample, &theta).unwrap();
        let fd = crate::numerics::gradient(
            |th| log_likelihood(&family, &sample, th).unwrap(),
            &theta,
        );
        for k in 0..2 {
            assert_abs_diff_eq!(s[k], fd[k], epsilon = 1e-5 * s[k].abs().max(1.0));
        }
    }
}
