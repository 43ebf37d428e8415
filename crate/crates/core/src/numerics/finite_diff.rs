//! Central finite differences with curvature-scaled steps.

/// Step for first derivatives: `h = ε^{1/3} · max(1, |x|)`.
pub fn step_for(x: f64) -> f64 {
    f64::EPSILON.cbrt() * x.abs().max(1.0)
}

/// Step for second derivatives: `h = ε^{1/4} · max(1, |x|)`.
pub fn step2_for(x: f64) -> f64 {
    f64::EPSILON.powf(0.25) * x.abs().max(1.0)
}

/// Central-difference gradient of `f` at `point`.
pub fn gradient<F: Fn(&[f64]) -> f64>(f: F, point: &[f64]) -> Vec<f64> {
    let mut shifted = point.to_vec();
    let mut grad = Vec::with_capacity(point.len());
    for k in 0..point.len() {
        let h = step_for(point[k]);
        shifted[k] = point[k] + h;
        let up = f(&shifted);
        shifted[k] = point[k] - h;
        let down = f(&shifted);
        shifted[k] = point[k];
        grad.push((up - down) / (2.0 * h));
    }
    grad
}

/// Central second derivative of a univariate function.
pub fn second_derivative<F: Fn(f64) -> f64>(f: F, x: f64) -> f64 {
    let h = step2_for(x);
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}

/// Symmetrized Hessian of `f` at `point`, by differencing the gradient of `f`.
pub fn hessian_of<F: Fn(&[f64]) -> f64>(f: F, point: &[f64]) -> Vec<Vec<f64>> {
    let dim = point.len();
    let mut hess = vec![vec![0.0; dim]; dim];
    let mut shifted = point.to_vec();
    for k in 0..dim {
        let h = step2_for(point[k]);
        shifted[k] = point[k] + h;
        let up = gradient(&f, &shifted);
        shifted[k] = point[k] - h;
        let down = gradient(&f, &shifted);
        shifted[k] = point[k];
        for l in 0..dim {
            hess[k][l] += (up[l] - down[l]) / (2.0 * h);
        }
    }
    // Average the two difference orders.
    for k in 0..dim {
        for l in (k + 1)..dim {
            let sym = 0.5 * (hess[k][l] + hess[l][k]);
            hess[k][l] = sym;
            hess[l][k] = sym;
        }
    }
    hess
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gradient_of_quadratic() {
        let f = |v: &[f64]| v[0] * v[0] + 2.0 * v[0] * v[1] + 3.0 * v[1] * v[1];
        let g = gradient(f, &[1.5, -0.5]);
        assert_abs_diff_eq!(g[0], 2.0 * 1.5 + 2.0 * -0.5, epsilon = 1e-9);
        assert_abs_diff_eq!(g[1], 2.0 * 1.5 + 6.0 * -0.5, epsilon = 1e-9);
    }

    #[test]
    fn second_derivative_of_exp() {
        assert_abs_diff_eq!(second_derivative(f64::exp, 0.7), (0.7f64).exp(), epsilon = 1e-6);
    }

    #[test]
    fn hessian_of_cubic() {
        let f = |v: &[f64]| v[0].powi(3) + v[0] * v[1];
        let h = hessian_of(f, &[2.0, 1.0]);
        assert_abs_diff_eq!(h[0][0], 12.0, epsilon = 1e-5);
        assert_abs_diff_eq!(h[0][1], 1.0, epsilon = 1e-5);
        assert_abs_diff_eq!(h[1][1], 0.0, epsilon = 1e-5);
    }
}
