//! Safeguarded maximum-likelihood solver.
//!
//! One-parameter fits run Newton on the score with backtracking so the
//! log-likelihood never decreases, falling back to bisection on a score
//! sign change when a Newton step stalls. Multimodal likelihoods (Cauchy,
//! mixtures) are scanned from a multistart grid over a data-driven
//! bracket and the best local maximum wins; exact ties go to the smallest
//! parameter so output is deterministic. Multiparameter fits use
//! coordinate-wise bounded quasi-Newton with the same ascent safeguard.

use nalgebra::DMatrix;

use crate::families::{log_likelihood, score, Family, Sample};
use crate::numerics::finite_diff;
use crate::{Error, Result};

/// Solver knobs. The tolerance applies to the score norm (projected score
/// norm for bound-constrained fits).
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Number of starts scanned for multimodal likelihoods.
    pub multistart_grid: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { tolerance: 1e-10, max_iterations: 200, multistart_grid: 25 }
    }
}

impl SolverConfig {
    /// Default tolerance scaled for a sample of size `n`.
    ///
    /// Score evaluations on `n` observations carry `O(n·ε)` rounding, so
    /// the absolute default becomes unreachable for very large samples;
    /// this keeps the threshold a few orders above the noise floor while
    /// staying far below any statistically meaningful scale.
    pub fn for_sample_size(n: usize) -> Self {
        SolverConfig { tolerance: 1e-10 * (n as f64 / 100.0).max(1.0), ..Default::default() }
    }
}

/// Outcome of a fit.
///
/// `converged` implies `final_score_norm ≤ tolerance` and, for interior
/// fits, a positive-definite observed information.
#[derive(Debug, Clone)]
pub struct FitResult {
    pub estimate: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
    pub final_score_norm: f64,
    /// `−∂² log-likelihood / ∂θ²` at the estimate, row-major.
    pub observed_information: DMatrix<f64>,
    /// Square roots of the inverse observed-information diagonal; NaN when
    /// the information is not invertible.
    pub std_error: Vec<f64>,
    /// Objective value (log-likelihood, or −χ² for minimum chi-square).
    pub objective: f64,
    /// The estimate sits on a domain or constraint boundary.
    pub boundary: bool,
}

/// Generic 1-D objective/gradient bundle.
pub(crate) struct Objective1D<'a> {
    pub value: &'a dyn Fn(f64) -> f64,
    pub grad: &'a dyn Fn(f64) -> f64,
    pub domain: (f64, f64),
    /// Expected-information curvature for a Fisher-scoring first step.
    /// For exactly quadratic log-likelihoods that single step lands on the
    /// stationary point; later iterations always difference the gradient.
    pub scoring_curvature: Option<&'a dyn Fn(f64) -> f64>,
}

pub(crate) struct Newton1DOutcome {
    pub theta: f64,
    pub iterations: usize,
    pub grad_norm: f64,
    pub value: f64,
}

/// Ascend `obj` from `start`; the objective never decreases across
/// accepted steps.
pub(crate) fn newton_ascent_1d(
    obj: &Objective1D<'_>,
    start: f64,
    config: &SolverConfig,
) -> Newton1DOutcome {
    let (lo, hi) = obj.domain;
    let clamp = |x: f64| {
        let mut y = x;
        if y <= lo {
            y = lo + 0.25 * (start - lo).abs().max(f64::MIN_POSITIVE);
        }
        if y >= hi {
            y = hi - 0.25 * (hi - start).abs().max(f64::MIN_POSITIVE);
        }
        y
    };
    let mut theta = clamp(start);
    let mut value = (obj.value)(theta);
    let mut grad = (obj.grad)(theta);
    let mut stalled = 0usize;
    let mut iterations = 0usize;
    while iterations < config.max_iterations {
        if grad.abs() <= config.tolerance || !grad.is_finite() {
            break;
        }
        iterations += 1;
        let curvature = match (iterations, obj.scoring_curvature) {
            (1, Some(expected)) => expected(theta),
            _ => {
                let h = finite_diff::step2_for(theta);
                -((obj.grad)(theta + h) - (obj.grad)(theta - h)) / (2.0 * h)
            }
        };
        let mut step = if curvature > 0.0 {
            grad / curvature
        } else {
            // Not locally concave: move uphill with a bounded trust step.
            grad.signum() * theta.abs().max(1.0) * 0.5
        };
        // Keep inside the open domain.
        if theta + step >= hi {
            step = 0.5 * (hi - theta);
        }
        if theta + step <= lo {
            step = 0.5 * (lo - theta);
        }
        // Ascent safeguard with a float-resolution equality band: once the
        // objective is flat at machine precision the score can still
        // contract, so moves that round to the same value are accepted.
        let band = 4.0 * f64::EPSILON * value.abs().max(1.0);
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..60 {
            let candidate = theta + lambda * step;
            let cand_value = (obj.value)(candidate);
            if cand_value.is_finite() && cand_value >= value - band {
                theta = candidate;
                value = value.max(cand_value);
                grad = (obj.grad)(theta);
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            stalled += 1;
            if stalled >= 2 {
                // Bisection fallback on a score sign change around theta.
                if let Some((t, g, v, extra)) = bisect_score(obj, theta, config) {
                    theta = t;
                    grad = g;
                    value = v;
                    iterations += extra;
                }
                break;
            }
        } else {
            stalled = 0;
        }
    }
    Newton1DOutcome { theta, iterations, grad_norm: grad.abs(), value }
}

/// Expand around `center` for a sign change of the gradient, then bisect.
fn bisect_score(
    obj: &Objective1D<'_>,
    center: f64,
    config: &SolverConfig,
) -> Option<(f64, f64, f64, usize)> {
    let (lo, hi) = obj.domain;
    let mut width = center.abs().max(1.0) * 0.5;
    let mut bracket = None;
    for _ in 0..40 {
        let a = (center - width).max(lo + f64::MIN_POSITIVE);
        let b = (center + width).min(hi - f64::MIN_POSITIVE);
        let ga = (obj.grad)(a);
        let gb = (obj.grad)(b);
        if ga > 0.0 && gb < 0.0 {
            bracket = Some((a, b, ga));
            break;
        }
        width *= 2.0;
        if a <= lo + f64::MIN_POSITIVE && b >= hi - f64::MIN_POSITIVE {
            break;
        }
    }
    let (mut a, mut b, _) = bracket?;
    let mut used = 0usize;
    for _ in 0..200 {
        used += 1;
        let mid = 0.5 * (a + b);
        let gm = (obj.grad)(mid);
        if gm.abs() <= config.tolerance || (b - a) < f64::EPSILON * mid.abs().max(1.0) {
            return Some((mid, gm, (obj.value)(mid), used));
        }
        if gm > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    let mid = 0.5 * (a + b);
    Some((mid, (obj.grad)(mid), (obj.value)(mid), used))
}

/// Coordinate-wise bounded quasi-Newton ascent for multiparameter fits.
///
/// `bounds` are treated as closed: coordinates may rest on them, reported
/// through the returned active-constraint mask. Convergence is on the
/// projected gradient.
pub(crate) struct CoordinateOutcome {
    pub theta: Vec<f64>,
    pub iterations: usize,
    pub projected_grad_norm: f64,
    pub value: f64,
    pub active: Vec<bool>,
}

pub(crate) fn coordinate_ascent(
    value: &dyn Fn(&[f64]) -> f64,
    grad: &dyn Fn(&[f64]) -> Vec<f64>,
    start: &[f64],
    bounds: &[(f64, f64)],
    config: &SolverConfig,
) -> CoordinateOutcome {
    let dim = start.len();
    let mut theta: Vec<f64> = start
        .iter()
        .zip(bounds)
        .map(|(&x, &(lo, hi))| x.clamp(lo, hi))
        .collect();
    let mut best = value(&theta);
    let mut iterations = 0usize;
    while iterations < config.max_iterations {
        iterations += 1;
        let mut moved = false;
        for k in 0..dim {
            let g = grad(&theta)[k];
            if !g.is_finite() || g.abs() <= 0.25 * config.tolerance {
                continue;
            }
            let h = finite_diff::step2_for(theta[k]);
            let probe = |x: f64, sign: f64| {
                let mut t = theta.clone();
                t[k] = (x + sign * h).clamp(bounds[k].0, bounds[k].1);
                grad(&t)[k]
            };
            let curvature = -(probe(theta[k], 1.0) - probe(theta[k], -1.0)) / (2.0 * h);
            let raw = if curvature > 0.0 {
                g / curvature
            } else {
                g.signum() * theta[k].abs().max(1.0) * 0.25
            };
            // Accept the longest halved step that does not decrease the
            // objective beyond float resolution; equal-value moves still
            // count, they let the score keep contracting once the
            // log-likelihood is flat at machine precision.
            let band = 4.0 * f64::EPSILON * best.abs().max(1.0);
            let mut lambda = 1.0;
            for _ in 0..50 {
                let cand = (theta[k] + lambda * raw).clamp(bounds[k].0, bounds[k].1);
                if cand == theta[k] {
                    break;
                }
                let mut t = theta.clone();
                t[k] = cand;
                let v = value(&t);
                if v.is_finite() && v >= best - band {
                    theta = t;
                    best = best.max(v);
                    moved = true;
                    break;
                }
                lambda *= 0.5;
            }
        }
        let g = grad(&theta);
        if projected_gradient_norm(&g, &theta, bounds) <= config.tolerance || !moved {
            break;
        }
    }
    let g = grad(&theta);
    let projected = projected_gradient_norm(&g, &theta, bounds);
    let active = theta
        .iter()
        .zip(bounds)
        .map(|(&t, &(lo, hi))| {
            (t - lo).abs() <= 1e-12 * lo.abs().max(1.0) || (hi - t).abs() <= 1e-12 * hi.abs().max(1.0)
        })
        .collect();
    CoordinateOutcome { theta, iterations, projected_grad_norm: projected, value: best, active }
}

/// Gradient with components pointing out of an active bound zeroed.
fn projected_gradient_norm(grad: &[f64], theta: &[f64], bounds: &[(f64, f64)]) -> f64 {
    let mut norm = 0.0f64;
    for k in 0..grad.len() {
        let (lo, hi) = bounds[k];
        let at_lo = (theta[k] - lo).abs() <= 1e-12 * lo.abs().max(1.0);
        let at_hi = (hi - theta[k]).abs() <= 1e-12 * hi.abs().max(1.0);
        let g = grad[k];
        let effective = if (at_lo && g < 0.0) || (at_hi && g > 0.0) { 0.0 } else { g };
        norm = norm.max(effective.abs());
    }
    norm
}

/// Observed information and standard errors at `theta`.
pub(crate) fn information_at(
    loglik: &dyn Fn(&[f64]) -> f64,
    theta: &[f64],
) -> (DMatrix<f64>, Vec<f64>, bool) {
    let dim = theta.len();
    let hess = finite_diff::hessian_of(loglik, theta);
    let mut info = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            info[(i, j)] = -hess[i][j];
        }
    }
    match info.clone().cholesky() {
        Some(chol) => {
            let inv = chol.inverse();
            let se = (0..dim).map(|i| inv[(i, i)].sqrt()).collect();
            (info, se, true)
        }
        None => (info, vec![f64::NAN; dim], false),
    }
}

/// Fit `family` to `sample` by maximum likelihood.
///
/// Returns a root of the score that is a local maximum; when the family is
/// multimodal, the best local maximum found from the multistart grid. A
/// degenerate sample that pins the optimum to the boundary comes back with
/// `converged = false` rather than a silent wrong answer.
pub fn mle_fit(family: &dyn Family, sample: &Sample, config: &SolverConfig) -> Result<FitResult> {
    if sample.n == 0 {
        return Err(Error::InvalidArgument("cannot fit an empty sample".into()));
    }
    let ll = |theta: &[f64]| match log_likelihood(family, sample, theta) {
        Ok(v) => v,
        Err(_) => f64::NEG_INFINITY,
    };
    let grad_all = |theta: &[f64]| {
        score(family, sample, theta).unwrap_or_else(|_| vec![f64::NAN; family.param_dim()])
    };

    if family.param_dim() == 1 {
        let domain = family.param_domain()[0];
        let value = |t: f64| ll(&[t]);
        let grad = |t: f64| grad_all(&[t])[0];
        let n = sample.n as f64;
        let scoring = |t: f64| {
            family
                .analytic_information(&[t])
                .map(|info| n * info[0][0])
                .unwrap_or(f64::NAN)
        };
        let default_start = family.default_start(sample)?;
        let has_info = family.analytic_information(&default_start).is_some();
        let obj = Objective1D {
            value: &value,
            grad: &grad,
            domain,
            scoring_curvature: if has_info { Some(&scoring) } else { None },
        };

        let mut starts = vec![default_start[0]];
        if family.multimodal() {
            if let Some((lo, hi)) = family.multistart_bracket(sample) {
                let m = config.multistart_grid.max(2);
                if hi > lo {
                    starts = (0..m)
                        .map(|k| lo + (hi - lo) * (k as f64 + 0.5) / m as f64)
                        .collect();
                } else {
                    starts = vec![lo];
                }
            }
        }

        let mut best: Option<Newton1DOutcome> = None;
        let mut total_iters = 0usize;
        for s in starts {
            let out = newton_ascent_1d(&obj, s, config);
            total_iters += out.iterations;
            let better = match &best {
                None => true,
                Some(b) => {
                    out.value > b.value
                        || (out.value == b.value && out.theta < b.theta)
                }
            };
            if better {
                best = Some(out);
            }
        }
        let best = best.expect("at least one start");
        let theta = vec![best.theta];
        let (info, se, pd) = information_at(&ll, &theta);
        let score_ok = best.grad_norm <= config.tolerance;
        Ok(FitResult {
            estimate: theta,
            converged: score_ok && pd,
            iterations: total_iters,
            final_score_norm: best.grad_norm,
            observed_information: info,
            std_error: se,
            objective: best.value,
            boundary: false,
        })
    } else {
        // Open domains become wide closed boxes with a tiny interior margin.
        let bounds: Vec<(f64, f64)> = family
            .param_domain()
            .iter()
            .map(|&(lo, hi)| {
                let width = if lo.is_finite() && hi.is_finite() { hi - lo } else { 1.0 };
                let margin = 1e-9 * width;
                (
                    if lo.is_finite() { lo + margin } else { -1e12 },
                    if hi.is_finite() { hi - margin } else { 1e12 },
                )
            })
            .collect();
        let start = family.default_start(sample)?;
        let out = coordinate_ascent(&ll, &grad_all, &start, &bounds, config);
        let (info, se, pd) = information_at(&ll, &out.theta);
        let at_bound = out.active.iter().any(|&a| a);
        let score_ok = out.projected_grad_norm <= config.tolerance;
        Ok(FitResult {
            estimate: out.theta,
            converged: score_ok && pd && !at_bound,
            iterations: out.iterations,
            final_score_norm: out.projected_grad_norm,
            observed_information: info,
            std_error: se,
            objective: out.value,
            boundary: at_bound,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{
        CauchyLocation, CurveFamily, MultinomialCurve, NormalLocation, NormalLocationScale,
        Sample, SampleMeta, SimplexMultinomial,
    };
    use approx::assert_abs_diff_eq;

    fn meta(name: &str) -> SampleMeta {
        SampleMeta { family: name.into(), true_theta: vec![], seed: 0 }
    }

    #[test]
    fn normal_location_mle_is_the_mean_exactly() {
        let family = NormalLocation::unit_sigma();
        let sample = family.sample(&[0.7], 500, 42).unwrap();
        let fit = mle_fit(&family, &sample, &SolverConfig::default()).unwrap();
        let mean = sample.reals().unwrap().iter().sum::<f64>() / 500.0;
        assert!(fit.converged);
        assert_eq!(fit.estimate[0], mean);
        // Observed information for unit sigma is exactly n.
        assert_abs_diff_eq!(fit.observed_information[(0, 0)], 500.0, epsilon = 1e-4);
    }

    #[test]
    fn binomial_mle_is_the_relative_frequency() {
        let family = CurveFamily::new(MultinomialCurve::binomial());
        let sample = Sample::from_counts(vec![30, 70], meta("binomial"));
        let fit = mle_fit(&family, &sample, &SolverConfig::default()).unwrap();
        assert!(fit.converged);
        assert_abs_diff_eq!(fit.estimate[0], 0.3, epsilon = 1e-10);
    }

    #[test]
    fn simplex_mle_recovers_relative_frequencies() {
        let family = SimplexMultinomial::new(3);
        let sample = Sample::from_counts(vec![20, 30, 50], meta("multinomial-simplex"));
        let fit = mle_fit(&family, &sample, &SolverConfig::default()).unwrap();
        assert!(fit.converged, "fit: {fit:?}");
        assert_abs_diff_eq!(fit.estimate[0], 0.2, epsilon = 1e-8);
        assert_abs_diff_eq!(fit.estimate[1], 0.3, epsilon = 1e-8);
    }

    #[test]
    fn cauchy_symmetric_triple_has_central_mle() {
        // Oracle: a brute-force grid scan of the log-likelihood over
        // [-3, 3] puts the maximum at 0 by symmetry.
        let family = CauchyLocation;
        let sample = Sample::from_reals(vec![-1.0, 0.0, 1.0], meta("cauchy"));
        let grid_best = (0..6001)
            .map(|k| -3.0 + k as f64 * 0.001)
            .map(|m| (m, log_likelihood(&family, &sample, &[m]).unwrap()))
            .fold((f64::NAN, f64::NEG_INFINITY), |acc, c| if c.1 > acc.1 { c } else { acc });
        assert_abs_diff_eq!(grid_best.0, 0.0, epsilon = 1e-9);

        let fit = mle_fit(&family, &sample, &SolverConfig::default()).unwrap();
        assert!(fit.converged);
        assert_abs_diff_eq!(fit.estimate[0], 0.0, epsilon = 1e-9);
    }

    #[test]
    fn location_scale_fit_matches_closed_form() {
        let family = NormalLocationScale;
        let sample = family.sample(&[1.0, 2.0], 400, 9).unwrap();
        let values = sample.reals().unwrap();
        let mean = values.iter().sum::<f64>() / 400.0;
        let sd = (values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / 400.0).sqrt();
        let fit = mle_fit(&family, &sample, &SolverConfig::for_sample_size(400)).unwrap();
        assert!(fit.converged, "fit: {fit:?}");
        assert_abs_diff_eq!(fit.estimate[0], mean, epsilon = 1e-7);
        assert_abs_diff_eq!(fit.estimate[1], sd, epsilon = 1e-7);
    }

    #[test]
    fn multistart_never_loses_to_an_initialization() {
        let family = CauchyLocation;
        let sample = family.sample(&[0.0], 41, 77).unwrap();
        let config = SolverConfig::default();
        let fit = mle_fit(&family, &sample, &config).unwrap();
        let (lo, hi) = family.multistart_bracket(&sample).unwrap();
        for k in 0..config.multistart_grid {
            let start = lo + (hi - lo) * (k as f64 + 0.5) / config.multistart_grid as f64;
            let start_ll = log_likelihood(&family, &sample, &[start]).unwrap();
            assert!(fit.objective >= start_ll);
        }
    }

    #[test]
    fn empty_sample_is_rejected() {
        let family = NormalLocation::unit_sigma();
        let sample = Sample::from_reals(vec![], meta("normal-loc"));
        assert!(mle_fit(&family, &sample, &SolverConfig::default()).is_err());
    }

    use crate::families::log_likelihood;
}
