//! Minimum chi-square estimation on parametric multinomial curves.

use nalgebra::DMatrix;

use crate::estimation::solver::{newton_ascent_1d, FitResult, Objective1D, SolverConfig};
use crate::families::{MultinomialCurve, Sample};
use crate::numerics::finite_diff;
use crate::{Error, Result};

fn chi_square(curve: &MultinomialCurve, counts: &[u64], p: f64) -> f64 {
    let n: u64 = counts.iter().sum();
    let f = curve.probs(p);
    counts
        .iter()
        .zip(&f)
        .map(|(&x, &ft)| {
            let e = n as f64 * ft;
            let d = x as f64 - e;
            d * d / e
        })
        .sum()
}

fn chi_square_grad(curve: &MultinomialCurve, counts: &[u64], p: f64) -> f64 {
    let n: u64 = counts.iter().sum();
    let f = curve.probs(p);
    let df = curve.derivs(p);
    counts
        .iter()
        .zip(f.iter().zip(&df))
        .map(|(&x, (&ft, &dt))| {
            let e = n as f64 * ft;
            let d = x as f64 - e;
            // d/dp [ d²/e ] = −2·d·dt/ft − d²·dt/(n·ft²)
            -2.0 * d * dt / ft - d * d * dt / (n as f64 * ft * ft)
        })
        .sum()
}

/// Minimize `Σ_t (x_t − n·f_t(p))²/(n·f_t(p))` over the curve parameter.
///
/// Runs the same safeguarded Newton/multistart machinery as the MLE; a
/// minimizer pinned to the domain boundary is flagged through
/// `converged = false` and `boundary = true`.
pub fn min_chisquare_fit(
    curve: &MultinomialCurve,
    sample: &Sample,
    config: &SolverConfig,
) -> Result<FitResult> {
    let counts = sample.counts()?;
    if counts.len() != curve.cells() {
        return Err(Error::InvalidArgument(format!(
            "expected {} cells, sample has {}",
            curve.cells(),
            counts.len()
        )));
    }
    let (lo, hi) = curve.domain();
    let value = |p: f64| -chi_square(curve, counts, p);
    let grad = |p: f64| -chi_square_grad(curve, counts, p);
    let obj = Objective1D { value: &value, grad: &grad, domain: (lo, hi), scoring_curvature: None };

    let m = config.multistart_grid.max(2);
    let mut best: Option<(f64, f64, f64, usize)> = None;
    for k in 0..m {
        let start = lo + (hi - lo) * (k as f64 + 0.5) / m as f64;
        let out = newton_ascent_1d(&obj, start, config);
        let better = match &best {
            None => true,
            Some(b) => out.value > b.1 || (out.value == b.1 && out.theta < b.0),
        };
        if better {
            best = Some((out.theta, out.value, out.grad_norm, out.iterations));
        }
    }
    let (p, value, grad_norm, iterations) = best.expect("at least one start");

    let width = hi - lo;
    let boundary = (p - lo) < 1e-6 * width || (hi - p) < 1e-6 * width;
    let curvature = -finite_diff::second_derivative(|t| -chi_square(curve, counts, t), p);
    let info = DMatrix::from_row_slice(1, 1, &[curvature]);
    let se = if curvature > 0.0 { vec![(1.0 / curvature).sqrt()] } else { vec![f64::NAN] };
    Ok(FitResult {
        estimate: vec![p],
        converged: grad_norm <= config.tolerance && curvature > 0.0 && !boundary,
        iterations,
        final_score_norm: grad_norm,
        observed_information: info,
        std_error: se,
        objective: value,
        boundary,
    })
}
