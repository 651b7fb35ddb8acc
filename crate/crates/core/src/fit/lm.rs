use nalgebra::{Matrix3, Vector3};

use super::{check_finite, score, total_sum_of_squares, FitConfig, FitError, FitResult, Termination};
use crate::cdf::Point;
use crate::model::{eval_fermi_dirac, fermi_jacobian, FermiParams, ModelParams};

/// Damping above this means no step along the gradient lowers the cost.
const MAX_DAMPING: f64 = 1e32;
const MIN_DAMPING: f64 = 1e-300;
const MIN_POINTS: usize = 4;

/// Starting point read off the empirical curve: `g` from the first point,
/// `mu` where the curve crosses `g/2`, and `T` from the quartile crossings,
/// which sit `2 T ln 3` apart on an exact Fermi-Dirac curve.
pub fn fermi_initial_guess(points: &[Point]) -> FermiParams {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x));
    let x_min = pts.first().map_or(0.0, |p| p.x);
    let x_max = pts.last().map_or(1.0, |p| p.x);
    let mut g0 = pts.first().map_or(1.0, |p| p.p);
    if !(g0 > 0.0) {
        g0 = pts.iter().map(|p| p.p).fold(f64::MIN_POSITIVE, f64::max);
    }

    let mu0 = crossing(&pts, 0.5 * g0);
    let width = crossing(&pts, 0.25 * g0) - crossing(&pts, 0.75 * g0);
    let span = x_max - x_min;
    let floor = if span > 0.0 {
        1e-3 * span
    } else {
        1e-3 * x_max.abs().max(1.0)
    };
    let t0 = (width / (2.0 * 3f64.ln())).max(floor);
    FermiParams::new(g0, mu0, t0).expect("initial guess is admissible")
}

/// First x where the piecewise-linear curve through `pts` reaches `target`
/// coming down from above. Clamped to the ends when never reached.
fn crossing(pts: &[Point], target: f64) -> f64 {
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a.p >= target && b.p <= target {
            if a.p == b.p {
                return a.x;
            }
            return a.x + (a.p - target) / (a.p - b.p) * (b.x - a.x);
        }
    }
    match pts.first() {
        Some(first) if first.p < target => first.x,
        _ => pts.last().map_or(0.0, |p| p.x),
    }
}

struct Problem<'a> {
    points: &'a [Point],
}

impl Problem<'_> {
    fn cost(&self, p: &FermiParams) -> f64 {
        self.points
            .iter()
            .map(|pt| (pt.p - eval_fermi_dirac(p, pt.x)).powi(2))
            .sum()
    }

    /// `J^T J` and `J^T r` for residuals `r = p - f`.
    fn normal_system(&self, p: &FermiParams) -> (Matrix3<f64>, Vector3<f64>) {
        let mut jtj = Matrix3::zeros();
        let mut jtr = Vector3::zeros();
        for pt in self.points {
            let j = Vector3::from(fermi_jacobian(p, pt.x));
            let r = pt.p - eval_fermi_dirac(p, pt.x);
            jtj += j * j.transpose();
            jtr += j * r;
        }
        (jtj, jtr)
    }
}

/// Levenberg-Marquardt fit of the Fermi-Dirac curve.
///
/// A step is rejected, and the damping raised, whenever it increases the
/// cost or leaves `g > 0, T > 0`. Reaching `max_iterations` without meeting
/// a tolerance yields [`FitError::NotConverged`] carrying the partial fit.
pub fn fit_fermi_dirac(
    points: &[Point],
    config: &FitConfig,
    init: Option<FermiParams>,
) -> Result<FitResult, FitError> {
    fit_fermi_dirac_traced(points, config, init).map(|(fit, _)| fit)
}

/// As [`fit_fermi_dirac`], also returning the cost after every accepted
/// step, starting with the initial cost.
pub fn fit_fermi_dirac_traced(
    points: &[Point],
    config: &FitConfig,
    init: Option<FermiParams>,
) -> Result<(FitResult, Vec<f64>), FitError> {
    config.validate()?;
    if points.len() < MIN_POINTS {
        return Err(FitError::TooFewPoints {
            needed: MIN_POINTS,
            found: points.len(),
        });
    }
    check_finite(points)?;
    let observed: Vec<f64> = points.iter().map(|pt| pt.p).collect();
    if !(total_sum_of_squares(&observed) > 0.0) {
        return Err(FitError::DegenerateObservations);
    }

    let problem = Problem { points };
    let mut params = init.unwrap_or_else(|| fermi_initial_guess(points));
    let mut cost = problem.cost(&params);
    let mut damping = config.damping_init;
    let mut history = vec![cost];
    let mut termination = Termination::MaxIterations;
    let mut iterations = 0;

    while iterations < config.max_iterations {
        iterations += 1;
        if cost == 0.0 {
            termination = Termination::Stationary;
            break;
        }
        let (jtj, jtr) = problem.normal_system(&params);
        let diag_max = jtj.diagonal().max();
        if !(diag_max > 0.0) {
            termination = Termination::Stationary;
            break;
        }
        let scale = Vector3::from_iterator(jtj.diagonal().iter().map(|d| d.max(1e-15 * diag_max)));
        let theta = Vector3::from(params.to_array());

        let accepted = loop {
            let damped = jtj + Matrix3::from_diagonal(&(scale * damping));
            if let Some(step) = damped.cholesky().map(|c| c.solve(&jtr)) {
                let next = theta + step;
                if let Ok(candidate) = FermiParams::new(next[0], next[1], next[2]) {
                    let next_cost = problem.cost(&candidate);
                    if next_cost <= cost {
                        break Some((candidate, next_cost, step));
                    }
                }
            }
            damping *= config.damping_factor;
            if damping > MAX_DAMPING {
                break None;
            }
        };
        let Some((candidate, next_cost, step)) = accepted else {
            termination = Termination::Stationary;
            break;
        };

        let step_small = step.norm() <= config.tol_step * (theta.norm() + config.tol_step);
        let cost_small = cost - next_cost <= config.tol_cost * cost;
        params = candidate;
        cost = next_cost;
        history.push(cost);
        damping = (damping / config.damping_factor).max(MIN_DAMPING);

        if step_small {
            termination = Termination::StepTolerance;
            break;
        }
        if cost_small {
            termination = Termination::CostTolerance;
            break;
        }
    }

    let params = ModelParams::FermiDirac(params);
    let fit = FitResult {
        r_squared: score(points, &params)?,
        params,
        iterations,
        converged: termination != Termination::MaxIterations,
        residual_norm: cost,
        termination,
    };
    if fit.converged {
        Ok((fit, history))
    } else {
        Err(FitError::NotConverged(Box::new(fit)))
    }
}
