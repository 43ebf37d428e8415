//! Cauchy location family with density `(1/π)·1/(1 + (x − m)²)`.

use rand::Rng;

use super::normal::sample_reals;
use super::{Family, ObservationSpace, Sample};
use crate::Result;

/// Unit-scale Cauchy with unknown center `m`.
///
/// The likelihood can have up to `n` local maxima, so fits run a
/// multistart grid over the sample range.
#[derive(Debug, Clone, Default)]
pub struct CauchyLocation;

impl Family for CauchyLocation {
    fn name(&self) -> &str {
        "cauchy"
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
        let d = x - theta[0];
        -std::f64::consts::PI.ln() - (1.0 + d * d).ln()
    }

    fn sample(&self, theta: &[f64], n: usize, seed: u64) -> Result<Sample> {
        // Exact inverse CDF: m + tan(π(u − ½)); the half-ulp offset keeps
        // u strictly inside (0, 1).
        sample_reals(self, theta, n, seed, |rng| {
            let u = (rng.random::<u64>() >> 11) as f64 * 2.0f64.powi(-53) + 2.0f64.powi(-54);
            theta[0] + (std::f64::consts::PI * (u - 0.5)).tan()
        })
    }

    fn analytic_score(&self, x: f64, theta: &[f64]) -> Option<Vec<f64>> {
        let d = x - theta[0];
        Some(vec![2.0 * d / (1.0 + d * d)])
    }

    fn analytic_information(&self, _theta: &[f64]) -> Option<Vec<Vec<f64>>> {
        Some(vec![vec![0.5]])
    }

    fn default_start(&self, sample: &Sample) -> Result<Vec<f64>> {
        let mut values = sample.reals()?.to_vec();
        let mid = values.len() / 2;
        let (_, median, _) = values.select_nth_unstable_by(mid, |a, b| a.total_cmp(b));
        Ok(vec![*median])
    }

    fn multimodal(&self) -> bool {
        true
    }

    fn multistart_bracket(&self, sample: &Sample) -> Option<(f64, f64)> {
        let values = sample.reals().ok()?;
        let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Some((lo, hi))
    }
}
