//! Moment estimation for the shape-only gamma family, and the classical
//! demonstration that the naive maximum-a-posteriori recipe gives two
//! conflicting variance estimates depending on what it is applied to.

use crate::estimation::solver::{newton_ascent_1d, Objective1D, SolverConfig};
use crate::families::Sample;
use crate::{Error, Result};

/// Method-of-moments estimate for Gamma(k, 1): with scale fixed at one the
/// mean equals the shape, so `k̂ = x̄`.
pub fn method_of_moments(sample: &Sample) -> Result<Vec<f64>> {
    let values = sample.reals()?;
    if values.is_empty() {
        return Err(Error::InvalidArgument("empty sample".into()));
    }
    for &x in values {
        if x <= 0.0 {
            return Err(Error::ObservationOutsideSupport { family: "gamma-shape".into(), value: x });
        }
    }
    Ok(vec![values.iter().sum::<f64>() / values.len() as f64])
}

/// σ² estimate from maximizing the full-data normal likelihood:
/// `(1/n)·Σ(x − x̄)²`.
pub fn variance_mle_from_data(sample: &Sample) -> Result<f64> {
    let values = sample.reals()?;
    if values.len() < 2 {
        return Err(Error::InvalidArgument("need at least two observations".into()));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    Ok(values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n)
}

/// σ² estimate from applying the same maximization to the sampling density
/// of the statistic `v = (1/n)·Σ(x − x̄)²` alone (a scaled chi-square with
/// `n − 1` degrees of freedom). The maximizer is `n·v/(n − 1)`, which
/// disagrees with [`variance_mle_from_data`] for every finite `n` — the
/// inconsistency of the two routes is the point.
pub fn variance_mle_from_statistic(sample: &Sample) -> Result<f64> {
    let values = sample.reals()?;
    if values.len() < 2 {
        return Err(Error::InvalidArgument("need at least two observations".into()));
    }
    let n = values.len() as f64;
    let v = variance_mle_from_data(sample)?;
    // ln f(v; σ²) = const − ((n−1)/2)·ln σ² − n·v/(2σ²), maximized
    // numerically rather than by quoting the closed form.
    let value = |s2: f64| -0.5 * (n - 1.0) * s2.ln() - 0.5 * n * v / s2;
    let grad = |s2: f64| -0.5 * (n - 1.0) / s2 + 0.5 * n * v / (s2 * s2);
    let obj = Objective1D {
        value: &value,
        grad: &grad,
        domain: (0.0, f64::INFINITY),
        scoring_curvature: None,
    };
    let out = newton_ascent_1d(&obj, v, &SolverConfig::default());
    Ok(out.theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{Family, GammaShape, SampleMeta};
    use approx::assert_abs_diff_eq;

    fn gamma_meta() -> SampleMeta {
        SampleMeta { family: "gamma-shape".into(), true_theta: vec![2.0], seed: 0 }
    }

    #[test]
    fn moment_estimate_is_the_sample_mean() {
        let sample = Sample::from_reals(vec![1.0, 2.0, 3.0, 6.8], gamma_meta());
        assert_abs_diff_eq!(method_of_moments(&sample).unwrap()[0], 3.2, epsilon = 1e-12);
    }

    #[test]
    fn constant_sample_returns_the_constant() {
        let sample = Sample::from_reals(vec![2.5; 8], gamma_meta());
        assert_eq!(method_of_moments(&sample).unwrap()[0], 2.5);
    }

    #[test]
    fn nonpositive_observation_is_a_domain_error() {
        let sample = Sample::from_reals(vec![1.0, -0.5], gamma_meta());
        assert!(method_of_moments(&sample).is_err());
    }

    #[test]
    fn large_sample_moment_estimate_concentrates() {
        let family = GammaShape;
        let n = 50_000;
        let sample = family.sample(&[2.0], n, 123).unwrap();
        let k = method_of_moments(&sample).unwrap()[0];
        // Var(x̄) = k/n.
        assert!((k - 2.0).abs() < 3.0 * (2.0f64 / n as f64).sqrt());
    }

    #[test]
    fn the_two_variance_routes_disagree_by_n_over_n_minus_1() {
        let sample = Sample::from_reals(
            vec![0.4, -1.2, 2.0, 0.9, -0.3, 1.1],
            SampleMeta { family: "normal".into(), true_theta: vec![0.0, 1.0], seed: 0 },
        );
        let from_data = variance_mle_from_data(&sample).unwrap();
        let from_stat = variance_mle_from_statistic(&sample).unwrap();
        // Oracle: the statistic route maximizes a scaled chi-square density,
        // whose mode in σ² is n·v/(n−1).
        assert_abs_diff_eq!(from_stat, 6.0 * from_data / 5.0, epsilon = 1e-8 * from_data);
        assert!(from_stat > from_data);
    }
}
