//! Multinomial families with parametric cell probabilities.
//!
//! A [`MultinomialCurve`] is a one-parameter curve `p ↦ (f_1(p), …, f_s(p))`
//! in the probability simplex; [`CurveFamily`] lifts it to the [`Family`]
//! contract. [`SimplexMultinomial`] is the saturated model where the first
//! `s − 1` cell probabilities are free parameters.
//!
//! Samples are stored as cell counts, never as category sequences.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use statrs::function::gamma::ln_gamma;
use std::sync::Arc;

use super::{Family, ObservationSpace, Sample, SampleMeta};
use crate::numerics::finite_diff;
use crate::{Error, Result};

/// `ln n! − Σ_t ln x_t!` for a count vector.
pub fn ln_multinomial_coefficient(counts: &[u64]) -> f64 {
    let n: u64 = counts.iter().sum();
    ln_gamma(n as f64 + 1.0) - counts.iter().map(|&x| ln_gamma(x as f64 + 1.0)).sum::<f64>()
}

type ProbFn = Arc<dyn Fn(f64) -> Vec<f64> + Send + Sync>;

/// One-parameter multinomial cell probabilities `f_t(p)` with their
/// derivatives `∂f_t/∂p` (analytic when supplied, otherwise central
/// finite differences).
#[derive(Clone)]
pub struct MultinomialCurve {
    name: String,
    cells: usize,
    domain: (f64, f64),
    probs: ProbFn,
    derivs: Option<ProbFn>,
}

impl MultinomialCurve {
    pub fn new(
        name: impl Into<String>,
        cells: usize,
        domain: (f64, f64),
        probs: impl Fn(f64) -> Vec<f64> + Send + Sync + 'static,
        derivs: Option<ProbFn>,
    ) -> Self {
        MultinomialCurve { name: name.into(), cells, domain, probs: Arc::new(probs), derivs }
    }

    /// Two cells `(p, 1 − p)`.
    pub fn binomial() -> Self {
        MultinomialCurve::new(
            "binomial",
            2,
            (0.0, 1.0),
            |p| vec![p, 1.0 - p],
            Some(Arc::new(|_| vec![1.0, -1.0])),
        )
    }

    /// Hardy–Weinberg trinomial `(p², 2p(1−p), (1−p)²)`.
    pub fn hardy_weinberg() -> Self {
        MultinomialCurve::new(
            "hardy-weinberg",
            3,
            (0.0, 1.0),
            |p| vec![p * p, 2.0 * p * (1.0 - p), (1.0 - p) * (1.0 - p)],
            Some(Arc::new(|p| vec![2.0 * p, 2.0 - 4.0 * p, -2.0 * (1.0 - p)])),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn probs(&self, p: f64) -> Vec<f64> {
        (self.probs)(p)
    }

    pub fn derivs(&self, p: f64) -> Vec<f64> {
        match &self.derivs {
            Some(d) => d(p),
            None => {
                let mut h = finite_diff::step_for(p);
                let (lo, hi) = self.domain;
                h = h.min(0.5 * (p - lo).min(hi - p));
                let up = (self.probs)(p + h);
                let down = (self.probs)(p - h);
                up.iter().zip(&down).map(|(u, d)| (u - d) / (2.0 * h)).collect()
            }
        }
    }

    /// Per-observation information `Σ_t (∂f_t/∂p)² / f_t`.
    pub fn per_obs_information(&self, p: f64) -> f64 {
        let f = self.probs(p);
        let df = self.derivs(p);
        f.iter().zip(&df).map(|(&ft, &dt)| dt * dt / ft).sum()
    }
}

impl std::fmt::Debug for MultinomialCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MultinomialCurve")
            .field("name", &self.name)
            .field("cells", &self.cells)
            .field("domain", &self.domain)
            .finish()
    }
}

/// Draw multinomial counts by sequential conditional binomials, so the
/// cost is `O(s)` regardless of `n`.
pub(crate) fn sample_counts(probs: &[f64], n: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let mut counts = vec![0u64; probs.len()];
    let mut remaining = n as u64;
    let mut prob_left = 1.0;
    for t in 0..probs.len() - 1 {
        if remaining == 0 {
            break;
        }
        let cond = (probs[t] / prob_left).clamp(0.0, 1.0);
        let draw = Binomial::new(remaining, cond).expect("conditional probability in [0,1]");
        counts[t] = draw.sample(rng);
        remaining -= counts[t];
        prob_left -= probs[t];
    }
    *counts.last_mut().expect("at least one cell") = remaining;
    counts
}

/// A [`MultinomialCurve`] as a one-parameter [`Family`].
#[derive(Debug, Clone)]
pub struct CurveFamily {
    curve: MultinomialCurve,
}

impl CurveFamily {
    pub fn new(curve: MultinomialCurve) -> Self {
        CurveFamily { curve }
    }

    pub fn curve(&self) -> &MultinomialCurve {
        &self.curve
    }
}

impl Family for CurveFamily {
    fn name(&self) -> &str {
        self.curve.name()
    }

    fn param_dim(&self) -> usize {
        1
    }

    fn param_domain(&self) -> Vec<(f64, f64)> {
        vec![self.curve.domain]
    }

    fn observation_space(&self) -> ObservationSpace {
        ObservationSpace::Cells(self.curve.cells)
    }

    fn log_density(&self, x: f64, theta: &[f64]) -> f64 {
        let t = x as usize;
        self.curve.probs(theta[0])[t].ln()
    }

    fn sample(&self, theta: &[f64], n: usize, seed: u64) -> Result<Sample> {
        if n == 0 {
            return Err(Error::InvalidArgument("sample size must be at least 1".into()));
        }
        if !self.param_ok(theta) {
            return Err(Error::ParameterOutsideDomain {
                family: self.name().to_string(),
                parameter: theta.to_vec(),
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let counts = sample_counts(&self.curve.probs(theta[0]), n, &mut rng);
        Ok(Sample::from_counts(
            counts,
            SampleMeta { family: self.name().to_string(), true_theta: theta.to_vec(), seed },
        ))
    }

    fn analytic_score(&self, x: f64, theta: &[f64]) -> Option<Vec<f64>> {
        let t = x as usize;
        let f = self.curve.probs(theta[0]);
        let df = self.curve.derivs(theta[0]);
        Some(vec![df[t] / f[t]])
    }

    fn analytic_information(&self, theta: &[f64]) -> Option<Vec<Vec<f64>>> {
        Some(vec![vec![self.curve.per_obs_information(theta[0])]])
    }

    fn default_start(&self, sample: &Sample) -> Result<Vec<f64>> {
        let counts = sample.counts()?;
        let n: u64 = counts.iter().sum();
        let (lo, hi) = self.curve.domain;
        let margin = 1e-4 * (hi - lo).min(1.0);
        // Plug-in start: allele frequency for Hardy–Weinberg shaped cells,
        // first-cell frequency otherwise.
        let guess = if self.curve.cells == 3 {
            (2 * counts[0] + counts[1]) as f64 / (2 * n) as f64
        } else {
            counts[0] as f64 / n as f64
        };
        Ok(vec![guess.clamp(lo + margin, hi - margin)])
    }
}

/// Saturated multinomial: `s` cells, parameters `(p_1, …, p_{s−1})` on the
/// open simplex, last cell `1 − Σ p_t`.
#[derive(Debug, Clone)]
pub struct SimplexMultinomial {
    cells: usize,
}

impl SimplexMultinomial {
    pub fn new(cells: usize) -> Self {
        assert!(cells >= 2);
        SimplexMultinomial { cells }
    }

    fn full_probs(&self, theta: &[f64]) -> Vec<f64> {
        let mut probs = theta.to_vec();
        probs.push(1.0 - theta.iter().sum::<f64>());
        probs
    }
}

impl Family for SimplexMultinomial {
    fn name(&self) -> &str {
        "multinomial-simplex"
    }

    fn param_dim(&self) -> usize {
        self.cells - 1
    }

    fn param_domain(&self) -> Vec<(f64, f64)> {
        vec![(0.0, 1.0); self.cells - 1]
    }

    fn param_ok(&self, theta: &[f64]) -> bool {
        theta.len() == self.cells - 1
            && theta.iter().all(|&p| p.is_finite() && p > 0.0 && p < 1.0)
            && theta.iter().sum::<f64>() < 1.0
    }

    fn observation_space(&self) -> ObservationSpace {
        ObservationSpace::Cells(self.cells)
    }

    fn log_density(&self, x: f64, theta: &[f64]) -> f64 {
        self.full_probs(theta)[x as usize].ln()
    }

    fn sample(&self, theta: &[f64], n: usize, seed: u64) -> Result<Sample> {
        if n == 0 {
            return Err(Error::InvalidArgument("sample size must be at least 1".into()));
        }
        if !self.param_ok(theta) {
            return Err(Error::ParameterOutsideDomain {
                family: self.name().to_string(),
                parameter: theta.to_vec(),
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let counts = sample_counts(&self.full_probs(theta), n, &mut rng);
        Ok(Sample::from_counts(
            counts,
            SampleMeta { family: self.name().to_string(), true_theta: theta.to_vec(), seed },
        ))
    }

    fn analytic_score(&self, x: f64, theta: &[f64]) -> Option<Vec<f64>> {
        let t = x as usize;
        let probs = self.full_probs(theta);
        let last = self.cells - 1;
        let mut grad = vec![0.0; self.cells - 1];
        if t == last {
            grad.iter_mut().for_each(|g| *g = -1.0 / probs[last]);
        } else {
            grad[t] = 1.0 / probs[t];
        }
        Some(grad)
    }

    fn default_start(&self, sample: &Sample) -> Result<Vec<f64>> {
        let counts = sample.counts()?;
        let n: u64 = counts.iter().sum();
        let raw: Vec<f64> =
            counts[..self.cells - 1].iter().map(|&x| (x as f64 + 0.5) / (n as f64 + 1.0)).collect();
        Ok(raw)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn curve_probabilities_sum_to_one() {
        for curve in [MultinomialCurve::binomial(), MultinomialCurve::hardy_weinberg()] {
            for k in 1..20 {
                let p = k as f64 / 20.0;
                let f = curve.probs(p);
                assert_abs_diff_eq!(f.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
                assert!(f.iter().all(|&ft| ft > 0.0));
                // Σ ∂f_t/∂p = 0 follows from Σ f_t = 1.
                assert_abs_diff_eq!(curve.derivs(p).iter().sum::<f64>(), 0.0, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn analytic_derivs_match_finite_differences() {
        let analytic = MultinomialCurve::hardy_weinberg();
        let numeric = MultinomialCurve::new(
            "hw-numeric",
            3,
            (0.0, 1.0),
            |p| vec![p * p, 2.0 * p * (1.0 - p), (1.0 - p) * (1.0 - p)],
            None,
        );
        for k in 1..10 {
            let p = k as f64 / 10.0;
            let a = analytic.derivs(p);
            let b = numeric.derivs(p);
            for t in 0..3 {
                assert_abs_diff_eq!(a[t], b[t], epsilon = 1e-7);
            }
        }
    }

    #[test]
    fn counts_sum_to_n_and_concentrate() {
        let family = CurveFamily::new(MultinomialCurve::binomial());
        let sample = family.sample(&[0.5], 100_000, 77).unwrap();
        let counts = sample.counts().unwrap();
        assert_eq!(counts.iter().sum::<u64>(), 100_000);
        let freq = counts[0] as f64 / 100_000.0;
        assert_abs_diff_eq!(freq, 0.5, epsilon = 0.01);
    }

    #[test]
    fn count_sampler_is_deterministic() {
        let family = CurveFamily::new(MultinomialCurve::hardy_weinberg());
        assert_eq!(family.sample(&[0.3], 5000, 4).unwrap(), family.sample(&[0.3], 5000, 4).unwrap());
    }

    #[test]
    fn hardy_weinberg_counts_pass_chi_square() {
        let family = CurveFamily::new(MultinomialCurve::hardy_weinberg());
        let n = 60_000;
        let p = 0.3;
        let sample = family.sample(&[p], n, 15).unwrap();
        let counts = sample.counts().unwrap();
        let f = family.curve().probs(p);
        let chi2: f64 = counts
            .iter()
            .zip(&f)
            .map(|(&x, &ft)| {
                let e = n as f64 * ft;
                (x as f64 - e).powi(2) / e
            })
            .sum();
        // 2 degrees of freedom; 0.999 quantile is 13.8.
        assert!(chi2 < 13.8, "chi-square statistic {chi2} too large");
    }

    #[test]
    fn simplex_rejects_points_off_the_simplex() {
        let family = SimplexMultinomial::new(3);
        assert!(family.param_ok(&[0.2, 0.3]));
        assert!(!family.param_ok(&[0.6, 0.5]));
        assert!(!family.param_ok(&[0.0, 0.5]));
    }

    #[test]
    fn multinomial_coefficient_matches_binomial() {
        // C(4,3) = 4
        assert_abs_diff_eq!(ln_multinomial_coefficient(&[3, 1]), 4.0f64.ln(), epsilon = 1e-12);
        // 7!/(2!2!3!) = 210
        assert_abs_diff_eq!(
            ln_multinomial_coefficient(&[2, 2, 3]),
            210.0f64.ln(),
            epsilon = 1e-12
        );
    }
}
