//! Parametric families: the model contract plus the concrete families the
//! estimators and information identities are exercised on.
//!
//! A [`Family`] bundles a per-observation log-density, a seeded sampler,
//! an open parameter domain and optional analytic score/information.
//! Continuous families observe reals; multinomial families observe cell
//! indices and their samples are stored as counts.

pub mod cauchy;
pub mod gamma;
pub mod mixture;
pub mod multinomial;
pub mod neyman_scott;
pub mod normal;
pub mod registry;

pub use cauchy::CauchyLocation;
pub use gamma::GammaShape;
pub use mixture::NormalMixture;
pub use multinomial::{CurveFamily, MultinomialCurve, SimplexMultinomial};
pub use neyman_scott::{sample_paired_array, PairedArray};
pub use normal::{NormalLocation, NormalLocationScale};

use crate::numerics::finite_diff;
use crate::{Error, Result};

/// Observation space of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObservationSpace {
    /// The whole real line.
    Real,
    /// The open half line `(0, ∞)`.
    PositiveReal,
    /// `s` discrete cells, observations are cell indices `0..s`.
    Cells(usize),
}

/// Provenance carried by every sample.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMeta {
    pub family: String,
    pub true_theta: Vec<f64>,
    pub seed: u64,
}

/// Observed values: reals for continuous families, cell counts summing to
/// `n` for multinomial families.
#[derive(Debug, Clone, PartialEq)]
pub enum SampleValues {
    Reals(Vec<f64>),
    Counts(Vec<u64>),
}

/// An ordered sample with provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub values: SampleValues,
    pub n: usize,
    pub meta: SampleMeta,
}

impl Sample {
    pub fn from_reals(values: Vec<f64>, meta: SampleMeta) -> Self {
        let n = values.len();
        Sample { values: SampleValues::Reals(values), n, meta }
    }

    pub fn from_counts(counts: Vec<u64>, meta: SampleMeta) -> Self {
        let n = counts.iter().sum::<u64>() as usize;
        Sample { values: SampleValues::Counts(counts), n, meta }
    }

    pub fn reals(&self) -> Result<&[f64]> {
        match &self.values {
            SampleValues::Reals(v) => Ok(v),
            SampleValues::Counts(_) => {
                Err(Error::InvalidArgument("expected a real-valued sample, got counts".into()))
            }
        }
    }

    pub fn counts(&self) -> Result<&[u64]> {
        match &self.values {
            SampleValues::Counts(v) => Ok(v),
            SampleValues::Reals(_) => {
                Err(Error::InvalidArgument("expected a count sample, got reals".into()))
            }
        }
    }
}

/// The parametric-family contract.
pub trait Family: Send + Sync {
    fn name(&self) -> &str;

    fn param_dim(&self) -> usize;

    /// Per-coordinate open intervals; bounds may be infinite.
    fn param_domain(&self) -> Vec<(f64, f64)>;

    /// Whether `theta` lies in the open domain. The default checks the
    /// per-coordinate intervals; families with joint constraints (the
    /// probability simplex) override it.
    fn param_ok(&self, theta: &[f64]) -> bool {
        theta.len() == self.param_dim()
            && theta
                .iter()
                .zip(self.param_domain())
                .all(|(&t, (lo, hi))| t.is_finite() && t > lo && t < hi)
    }

    fn observation_space(&self) -> ObservationSpace;

    /// Log-density of a single observation. For multinomial families the
    /// observation is the cell index. Returns `-∞` where the density is
    /// exactly zero; assumes `theta` is in the domain.
    fn log_density(&self, x: f64, theta: &[f64]) -> f64;

    /// Draw a sample of size `n`, deterministic in `(theta, n, seed)`.
    fn sample(&self, theta: &[f64], n: usize, seed: u64) -> Result<Sample>;

    /// Per-observation score, when a closed form is shipped.
    fn analytic_score(&self, _x: f64, _theta: &[f64]) -> Option<Vec<f64>> {
        None
    }

    /// Per-observation expected information matrix (row-major), when a
    /// closed form is shipped.
    fn analytic_information(&self, _theta: &[f64]) -> Option<Vec<Vec<f64>>> {
        None
    }

    /// A reasonable solver start derived from the sample.
    fn default_start(&self, sample: &Sample) -> Result<Vec<f64>>;

    /// Whether the log-likelihood can have several local maxima, in which
    /// case the solver scans a multistart grid over [`Family::multistart_bracket`].
    fn multimodal(&self) -> bool {
        false
    }

    /// Data-driven bracket for 1-D multistart searches.
    fn multistart_bracket(&self, _sample: &Sample) -> Option<(f64, f64)> {
        None
    }
}

fn check_domain(family: &dyn Family, theta: &[f64]) -> Result<()> {
    if family.param_ok(theta) {
        Ok(())
    } else {
        Err(Error::ParameterOutsideDomain {
            family: family.name().to_string(),
            parameter: theta.to_vec(),
        })
    }
}

/// Sum of per-observation log-densities; for count samples, the
/// multinomial log-pmf of the counts. The `log n! − Σ log x_t!` term is
/// included so the value is the exact log-probability of the counts.
pub fn log_likelihood(family: &dyn Family, sample: &Sample, theta: &[f64]) -> Result<f64> {
    check_domain(family, theta)?;
    match &sample.values {
        SampleValues::Reals(values) => {
            Ok(values.iter().map(|&x| family.log_density(x, theta)).sum())
        }
        SampleValues::Counts(counts) => {
            let mut total = multinomial::ln_multinomial_coefficient(counts);
            for (t, &count) in counts.iter().enumerate() {
                if count > 0 {
                    total += count as f64 * family.log_density(t as f64, theta);
                }
            }
            Ok(total)
        }
    }
}

/// Gradient of the log-likelihood in `theta`.
///
/// Uses the family's analytic score when shipped, otherwise central finite
/// differences with step `ε^{1/3}·max(1, |θ_k|)`, shrunk where the domain
/// boundary is closer than the step.
pub fn score(family: &dyn Family, sample: &Sample, theta: &[f64]) -> Result<Vec<f64>> {
    check_domain(family, theta)?;
    if let Some(total) = analytic_sample_score(family, sample, theta) {
        return Ok(total);
    }
    let domain = family.param_domain();
    let mut grad = vec![0.0; theta.len()];
    let mut shifted = theta.to_vec();
    for k in 0..theta.len() {
        let mut h = finite_diff::step_for(theta[k]);
        let (lo, hi) = domain[k];
        let room = (theta[k] - lo).min(hi - theta[k]);
        if room.is_finite() {
            h = h.min(0.5 * room);
        }
        shifted[k] = theta[k] + h;
        let up = log_likelihood(family, sample, &shifted)?;
        shifted[k] = theta[k] - h;
        let down = log_likelihood(family, sample, &shifted)?;
        shifted[k] = theta[k];
        grad[k] = (up - down) / (2.0 * h);
    }
    Ok(grad)
}

fn analytic_sample_score(family: &dyn Family, sample: &Sample, theta: &[f64]) -> Option<Vec<f64>> {
    let mut total = vec![0.0; theta.len()];
    match &sample.values {
        SampleValues::Reals(values) => {
            for &x in values {
                let s = family.analytic_score(x, theta)?;
                for (tot, si) in total.iter_mut().zip(&s) {
                    *tot += si;
                }
            }
        }
        SampleValues::Counts(counts) => {
            for (t, &count) in counts.iter().enumerate() {
                if count > 0 {
                    let s = family.analytic_score(t as f64, theta)?;
                    for (tot, si) in total.iter_mut().zip(&s) {
                        *tot += count as f64 * si;
                    }
                }
            }
        }
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn standard_normal_log_density_at_mode() {
        let family = NormalLocation::unit_sigma();
        let sample = family.sample(&[0.0], 1, 7).unwrap();
        let manual = Sample::from_reals(
            vec![0.0],
            SampleMeta { family: "normal-loc".into(), true_theta: vec![0.0], seed: 0 },
        );
        // −½·ln(2π)
        assert_abs_diff_eq!(
            log_likelihood(&family, &manual, &[0.0]).unwrap(),
            -0.918_938_533_204_672_7,
            epsilon = 1e-12
        );
        assert_eq!(sample.n, 1);
    }

    #[test]
    fn binomial_counts_log_likelihood_is_the_log_pmf() {
        let family = CurveFamily::new(MultinomialCurve::binomial());
        let sample = Sample::from_counts(
            vec![3, 1],
            SampleMeta { family: "binomial".into(), true_theta: vec![0.75], seed: 0 },
        );
        // log C(4,3) + 3 ln 0.75 + ln 0.25
        let expected = 4.0f64.ln() + 3.0 * 0.75f64.ln() + 0.25f64.ln();
        assert_abs_diff_eq!(
            log_likelihood(&family, &sample, &[0.75]).unwrap(),
            expected,
            epsilon = 1e-12
        );
    }

    #[test]
    fn cauchy_log_density_at_center() {
        let family = CauchyLocation;
        let sample = Sample::from_reals(
            vec![2.5],
            SampleMeta { family: "cauchy".into(), true_theta: vec![2.5], seed: 0 },
        );
        assert_abs_diff_eq!(
            log_likelihood(&family, &sample, &[2.5]).unwrap(),
            -std::f64::consts::PI.ln(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn out_of_domain_parameter_is_an_error() {
        let family = GammaShape;
        let sample = Sample::from_reals(
            vec![1.0],
            SampleMeta { family: "gamma-shape".into(), true_theta: vec![1.0], seed: 0 },
        );
        assert!(log_likelihood(&family, &sample, &[-1.0]).is_err());
        assert!(score(&family, &sample, &[0.0]).is_err());
    }

    #[test]
    fn zero_density_observation_gives_negative_infinity() {
        let family = GammaShape;
        let sample = Sample::from_reals(
            vec![-3.0],
            SampleMeta { family: "gamma-shape".into(), true_theta: vec![2.0], seed: 0 },
        );
        assert_eq!(log_likelihood(&family, &sample, &[2.0]).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn normal_location_score_is_zero_at_the_mean() {
        let family = NormalLocation::unit_sigma();
        let sample = family.sample(&[1.0], 50, 3).unwrap();
        let mean = sample.reals().unwrap().iter().sum::<f64>() / 50.0;
        let s = score(&family, &sample, &[mean]).unwrap();
        assert_abs_diff_eq!(s[0], 0.0, epsilon = 1e-9);
    }

    #[test]
    fn cauchy_score_vanishes_at_single_central_observation() {
        let family = CauchyLocation;
        let sample = Sample::from_reals(
            vec![0.4],
            SampleMeta { family: "cauchy".into(), true_theta: vec![0.4], seed: 0 },
        );
        let s = score(&family, &sample, &[0.4]).unwrap();
        assert_abs_diff_eq!(s[0], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn binomial_score_matches_hand_formula() {
        // k/p − (n−k)/(1−p), cross-checked against finite differences.
        let family = CurveFamily::new(MultinomialCurve::binomial());
        let sample = Sample::from_counts(
            vec![7, 13],
            SampleMeta { family: "binomial".into(), true_theta: vec![0.4], seed: 0 },
        );
        let p = 0.31;
        let s = score(&family, &sample, &[p]).unwrap();
        assert_abs_diff_eq!(s[0], 7.0 / p - 13.0 / (1.0 - p), epsilon = 1e-9);
        let fd = crate::numerics::gradient(
            |th| log_likelihood(&family, &sample, th).unwrap(),
            &[p],
        );
        assert_abs_diff_eq!(s[0], fd[0], epsilon = 1e-5 * s[0].abs().max(1.0));
    }
}
