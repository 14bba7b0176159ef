//! Least-squares fit of `γ̂(m) = 3 - (m + α)^{-β}` to exponent data.
//!
//! The asymptote is held at 3; only `α` and `β` are free. The solver is a
//! two-parameter Levenberg–Marquardt with an analytic Jacobian, started from
//! `α = 1` and the through-origin regression of `ln(3 - γ)` on `ln(m + 1)`.

use serde::Serialize;

use crate::error::{Error, Result};

pub const ASYMPTOTE: f64 = 3.0;
pub const MAX_ITERATIONS: usize = 200;
pub const STEP_TOLERANCE: f64 = 1e-12;
/// Half-width of the reported confidence interval, in standard errors.
pub const CONFIDENCE_SIGMAS: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub alpha: f64,
    pub beta: f64,
    /// Residual sum of squares.
    pub rss: f64,
    /// `gamma_i - γ̂(m_i)`, in input order.
    pub residuals: Vec<f64>,
    pub iterations: usize,
    /// Asymptotic standard errors from `rss / (n - 2) · (JᵀJ)⁻¹`.
    pub alpha_stderr: f64,
    pub beta_stderr: f64,
}

impl FitResult {
    pub fn alpha_interval(&self) -> (f64, f64) {
        let h = CONFIDENCE_SIGMAS * self.alpha_stderr;
        (self.alpha - h, self.alpha + h)
    }

    pub fn beta_interval(&self) -> (f64, f64) {
        let h = CONFIDENCE_SIGMAS * self.beta_stderr;
        (self.beta - h, self.beta + h)
    }

    pub fn predict(&self, m: f64) -> Result<f64> {
        eval_ansatz(m, self.alpha, self.beta)
    }
}

/// `3 - (m + α)^{-β}`.
pub fn eval_ansatz(m: f64, alpha: f64, beta: f64) -> Result<f64> {
    let base = m + alpha;
    if !(base > 0.0) {
        return Err(Error::domain(format!("m + alpha = {base} must be positive")));
    }
    Ok(ASYMPTOTE - base.powf(-beta))
}

/// `(∂γ̂/∂α, ∂γ̂/∂β)` at `m`.
pub fn ansatz_gradient(m: f64, alpha: f64, beta: f64) -> Result<[f64; 2]> {
    let base = m + alpha;
    if !(base > 0.0) {
        return Err(Error::domain(format!("m + alpha = {base} must be positive")));
    }
    let p = base.powf(-beta);
    Ok([beta * p / base, p * base.ln()])
}

struct Evaluation {
    residuals: Vec<f64>,
    rss: f64,
}

fn evaluate(points: &[(f64, f64)], alpha: f64, beta: f64) -> Option<Evaluation> {
    let mut residuals = Vec::with_capacity(points.len());
    for &(m, g) in points {
        residuals.push(g - eval_ansatz(m, alpha, beta).ok()?);
    }
    let rss = residuals.iter().map(|r| r * r).sum();
    Some(Evaluation { residuals, rss })
}

/// `(JᵀJ, Jᵀr)` for the model Jacobian `J`.
fn normal_equations(
    points: &[(f64, f64)],
    alpha: f64,
    beta: f64,
    residuals: &[f64],
) -> Result<([[f64; 2]; 2], [f64; 2])> {
    let mut jtj = [[0.0; 2]; 2];
    let mut jtr = [0.0; 2];
    for (&(m, _), r) in points.iter().zip(residuals) {
        let j = ansatz_gradient(m, alpha, beta)?;
        for a in 0..2 {
            jtr[a] += j[a] * r;
            for b in 0..2 {
                jtj[a][b] += j[a] * j[b];
            }
        }
    }
    Ok((jtj, jtr))
}

fn solve2(a: [[f64; 2]; 2], b: [f64; 2]) -> Option<[f64; 2]> {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if det == 0.0 || !det.is_finite() {
        return None;
    }
    Some([
        (b[0] * a[1][1] - b[1] * a[0][1]) / det,
        (a[0][0] * b[1] - a[1][0] * b[0]) / det,
    ])
}

fn initial_guess(points: &[(f64, f64)]) -> (f64, f64) {
    let alpha = 1.0;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for &(m, g) in points {
        let x = (m + alpha).ln();
        let y = (ASYMPTOTE - g).ln();
        sxy += x * y;
        sxx += x * x;
    }
    let beta = -sxy / sxx;
    (alpha, if beta.is_finite() && beta > 0.0 { beta } else { 1.0 })
}

/// Fits `(α, β)` to `(m, γ)` points by unweighted least squares.
pub fn fit_ansatz(points: &[(f64, f64)]) -> Result<FitResult> {
    if points.len() < 3 {
        return Err(Error::InsufficientPoints {
            got: points.len(),
            need: 3,
        });
    }
    for &(m, g) in points {
        if !m.is_finite() || !g.is_finite() || !(m > 0.0) {
            return Err(Error::InvalidParams(format!(
                "point ({m}, {g}) needs finite gamma and m > 0"
            )));
        }
        if !(g < ASYMPTOTE) {
            return Err(Error::InvalidParams(format!(
                "gamma = {g} at m = {m} is not below the asymptote 3"
            )));
        }
    }

    let (mut alpha, mut beta) = initial_guess(points);
    let mut current = evaluate(points, alpha, beta)
        .ok_or_else(|| Error::InvalidParams("initial guess outside the model domain".into()))?;
    let mut lambda = 1e-3;
    let mut converged = false;
    let mut iterations = 0;

    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let (jtj, jtr) = normal_equations(points, alpha, beta, &current.residuals)?;
        let damped = [
            [jtj[0][0] * (1.0 + lambda), jtj[0][1]],
            [jtj[1][0], jtj[1][1] * (1.0 + lambda)],
        ];
        let Some(step) = solve2(damped, jtr) else {
            // zero gradient information: already at a stationary point
            converged = jtr == [0.0, 0.0];
            break;
        };
        let step_norm = step[0].hypot(step[1]);
        if step_norm < STEP_TOLERANCE {
            converged = true;
            break;
        }
        match evaluate(points, alpha + step[0], beta + step[1]) {
            Some(trial) if trial.rss <= current.rss => {
                alpha += step[0];
                beta += step[1];
                current = trial;
                lambda = (lambda / 10.0).max(1e-15);
            }
            _ => lambda *= 10.0,
        }
    }
    if !converged {
        return Err(Error::NonConvergence { iterations });
    }
    if !(beta > 0.0) {
        return Err(Error::InvalidParams(format!(
            "fit ended with beta = {beta}; the curve does not rise"
        )));
    }

    let (jtj, _) = normal_equations(points, alpha, beta, &current.residuals)?;
    let dof = (points.len() - 2) as f64;
    let sigma2 = current.rss / dof;
    let det = jtj[0][0] * jtj[1][1] - jtj[0][1] * jtj[1][0];
    let (alpha_stderr, beta_stderr) = if det > 0.0 {
        ((sigma2 * jtj[1][1] / det).sqrt(), (sigma2 * jtj[0][0] / det).sqrt())
    } else {
        (f64::INFINITY, f64::INFINITY)
    };

    Ok(FitResult {
        alpha,
        beta,
        rss: current.rss,
        residuals: current.residuals,
        iterations,
        alpha_stderr,
        beta_stderr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn exact_points(alpha: f64, beta: f64) -> Vec<(f64, f64)> {
        (1..=10)
            .map(|m| (m as f64, eval_ansatz(m as f64, alpha, beta).unwrap()))
            .collect()
    }

    #[test]
    fn ansatz_values() {
        assert_abs_diff_eq!(eval_ansatz(1.0, 0.9205, 0.9932).unwrap(), 2.477, epsilon = 1e-3);
        assert_abs_diff_eq!(eval_ansatz(1.0, 0.0, 1.0).unwrap(), 2.0, epsilon = 1e-15);
        let far = eval_ansatz(1e6, 0.9205, 0.9932).unwrap();
        assert!(far < 3.0 && 3.0 - far < 1e-5);
        assert!(matches!(eval_ansatz(1.0, -1.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(eval_ansatz(1.0, -2.0, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn recovers_exact_model() {
        let fit = fit_ansatz(&exact_points(1.0, 1.0)).unwrap();
        assert_abs_diff_eq!(fit.alpha, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(fit.beta, 1.0, epsilon = 1e-9);
        assert!(fit.rss < 1e-20, "rss {}", fit.rss);
    }

    #[test]
    fn recovers_other_exact_models() {
        for &(a, b) in &[(0.3, 0.7), (2.5, 1.4), (0.9205, 0.9932)] {
            let fit = fit_ansatz(&exact_points(a, b)).unwrap();
            assert_abs_diff_eq!(fit.alpha, a, epsilon = 1e-8);
            assert_abs_diff_eq!(fit.beta, b, epsilon = 1e-8);
        }
    }

    #[test]
    fn rss_is_sum_of_squares() {
        let mut pts = exact_points(1.0, 1.0);
        pts[3].1 -= 0.01;
        pts[7].1 += 0.004;
        let fit = fit_ansatz(&pts).unwrap();
        let s: f64 = fit.residuals.iter().map(|r| r * r).sum();
        assert!((fit.rss - s).abs() <= 1e-12 * s);
        assert_eq!(fit.residuals.len(), pts.len());
        assert!(fit.alpha_stderr > 0.0 && fit.beta_stderr > 0.0);
    }

    #[test]
    fn preconditions() {
        let pts = exact_points(1.0, 1.0);
        assert!(matches!(
            fit_ansatz(&pts[..2]),
            Err(Error::InsufficientPoints { got: 2, need: 3 })
        ));
        assert!(matches!(fit_ansatz(&[]), Err(Error::InsufficientPoints { .. })));
        let mut bad = pts.clone();
        bad[0].1 = 3.0;
        assert!(matches!(fit_ansatz(&bad), Err(Error::InvalidParams(_))));
        assert!(fit_ansatz(&pts[..3]).is_ok());
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let h = 1e-6;
        for &(m, a, b) in &[(1.0, 0.9, 1.0), (7.0, 0.2, 0.5), (3.0, 2.0, 1.7)] {
            let g = ansatz_gradient(m, a, b).unwrap();
            let da = (eval_ansatz(m, a + h, b).unwrap() - eval_ansatz(m, a - h, b).unwrap()) / (2.0 * h);
            let db = (eval_ansatz(m, a, b + h).unwrap() - eval_ansatz(m, a, b - h).unwrap()) / (2.0 * h);
            assert!((g[0] - da).abs() <= 1e-5 * da.abs());
            assert!((g[1] - db).abs() <= 1e-5 * db.abs());
        }
    }
}
