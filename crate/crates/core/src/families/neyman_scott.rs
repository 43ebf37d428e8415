//! Paired-array model: `x_{ij} ~ N(μ_j, σ²)` for `i = 1, 2` and
//! `j = 1..J`, with a fresh nuisance mean per pair.
//!
//! The parameter count grows with the data, so this model deliberately
//! does not fit the [`super::Family`] contract; it ships a seeded sampler
//! and is consumed by the closed-form estimator in the estimation module.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::{Error, Result};

/// Observed pairs plus provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedArray {
    pub pairs: Vec<(f64, f64)>,
    pub sigma2: f64,
    pub seed: u64,
}

/// Draw `J` pairs with common variance `sigma2`.
///
/// The nuisance means are themselves drawn (spread `N(0, 5²)`) so the
/// estimator is exercised on genuinely heterogeneous pairs; the variance
/// estimator is invariant to them.
pub fn sample_paired_array(sigma2: f64, pairs: usize, seed: u64) -> Result<PairedArray> {
    if pairs == 0 {
        return Err(Error::InvalidArgument("need at least one pair".into()));
    }
    if sigma2 <= 0.0 {
        return Err(Error::InvalidArgument("sigma2 must be positive".into()));
    }
    let sigma = sigma2.sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..pairs)
        .map(|_| {
            let mu = 5.0 * rng.sample::<f64, _>(StandardNormal);
            let x1 = mu + sigma * rng.sample::<f64, _>(StandardNormal);
            let x2 = mu + sigma * rng.sample::<f64, _>(StandardNormal);
            (x1, x2)
        })
        .collect();
    Ok(PairedArray { pairs: data, sigma2, seed })
}
