//! Closed-form maximum likelihood for the paired-array model
//! `x_{ij} ~ N(μ_j, σ²)`, `i = 1, 2`.
//!
//! The per-pair means are nuisance parameters whose count grows with the
//! data; maximizing over all of them jointly gives `μ̂_j = (x_{1j} + x_{2j})/2`
//! and `σ̂² = (1/4J)·Σ (x_{1j} − x_{2j})²`, which converges to σ²/2 — half
//! the truth — no matter how many pairs are observed.

use crate::families::PairedArray;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct NeymanScottFit {
    pub mu: Vec<f64>,
    pub sigma2: f64,
    /// All pairs were internally identical, so σ̂² collapsed to zero.
    pub degenerate: bool,
}

pub fn neyman_scott_mle(pairs: &[(f64, f64)]) -> Result<NeymanScottFit> {
    if pairs.is_empty() {
        return Err(Error::InvalidArgument("need at least one pair".into()));
    }
    let mu: Vec<f64> = pairs.iter().map(|&(a, b)| 0.5 * (a + b)).collect();
    let sum_sq: f64 = pairs.iter().map(|&(a, b)| (a - b) * (a - b)).sum();
    let sigma2 = sum_sq / (4.0 * pairs.len() as f64);
    Ok(NeymanScottFit { mu, sigma2, degenerate: sigma2 == 0.0 })
}

/// Joint log-likelihood over `(μ_1, …, μ_J, σ²)`, used by tests to check
/// the closed form against direct numerical maximization on small `J`.
pub fn paired_array_log_likelihood(pairs: &[(f64, f64)], mu: &[f64], sigma2: f64) -> f64 {
    const LN_2PI: f64 = 1.837_877_066_409_345_4;
    let mut total = 0.0;
    for (j, &(a, b)) in pairs.iter().enumerate() {
        for x in [a, b] {
            let d = x - mu[j];
            total += -0.5 * LN_2PI - 0.5 * sigma2.ln() - 0.5 * d * d / sigma2;
        }
    }
    total
}

impl PairedArray {
    pub fn fit(&self) -> Result<NeymanScottFit> {
        neyman_scott_mle(&self.pairs)
    }
}
