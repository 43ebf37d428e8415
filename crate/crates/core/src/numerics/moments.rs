//! Streaming (single-pass) moment accumulation for vector-valued
//! observations, with an associative merge so replicate blocks can be
//! computed in parallel and reduced in a fixed order.

/// Welford-style accumulator over `dim`-dimensional observations.
///
/// Tracks count, mean vector and the centered co-moment matrix
/// `M2[i][j] = Σ (x_i − mean_i)(x_j − mean_j)`.
#[derive(Debug, Clone)]
pub struct MomentAccumulator {
    count: u64,
    mean: Vec<f64>,
    m2: Vec<Vec<f64>>,
}

impl MomentAccumulator {
    pub fn new(dim: usize) -> Self {
        Self { count: 0, mean: vec![0.0; dim], m2: vec![vec![0.0; dim]; dim] }
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Fold one observation into the running moments.
    pub fn push(&mut self, x: &[f64]) {
        assert_eq!(x.len(), self.dim());
        self.count += 1;
        let n = self.count as f64;
        let delta: Vec<f64> = x.iter().zip(&self.mean).map(|(xi, mi)| xi - mi).collect();
        for (mi, di) in self.mean.iter_mut().zip(&delta) {
            *mi += di / n;
        }
        for i in 0..x.len() {
            for j in 0..x.len() {
                self.m2[i][j] += delta[i] * (x[j] - self.mean[j]);
            }
        }
    }

    /// Merge another accumulator (Chan et al. parallel update).
    pub fn merge(&mut self, other: &MomentAccumulator) {
        assert_eq!(self.dim(), other.dim());
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = other.clone();
            return;
        }
        let na = self.count as f64;
        let nb = other.count as f64;
        let n = na + nb;
        let delta: Vec<f64> = other.mean.iter().zip(&self.mean).map(|(b, a)| b - a).collect();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                self.m2[i][j] += other.m2[i][j] + delta[i] * delta[j] * na * nb / n;
            }
        }
        for (mi, di) in self.mean.iter_mut().zip(&delta) {
            *mi += di * nb / n;
        }
        self.count += other.count;
    }

    pub fn mean(&self, i: usize) -> f64 {
        self.mean[i]
    }

    /// Population variance (`M2 / n`), so that `mse = var + bias²` holds
    /// exactly when both sides are computed from the same replicate set.
    pub fn variance(&self, i: usize) -> f64 {
        if self.count == 0 {
            f64::NAN
        } else {
            self.m2[i][i] / self.count as f64
        }
    }

    pub fn covariance(&self, i: usize, j: usize) -> f64 {
        if self.count == 0 {
            f64::NAN
        } else {
            self.m2[i][j] / self.count as f64
        }
    }

    pub fn correlation(&self, i: usize, j: usize) -> f64 {
        let denom = (self.m2[i][i] * self.m2[j][j]).sqrt();
        if denom == 0.0 {
            if i == j {
                1.0
            } else {
                f64::NAN
            }
        } else {
            self.m2[i][j] / denom
        }
    }

    pub fn std_dev(&self, i: usize) -> f64 {
        self.variance(i).sqrt()
    }
}
