//! Least-squares fitting of the cumulative point sets.
//!
//! [`fit_polynomial`] is a closed-form QR solve; [`fit_fermi_dirac`] is a
//! Levenberg-Marquardt iteration over `(g, mu, T)`. [`grid_oracle_fit`] is an
//! exhaustive search used to check the iterative solver in tests.

mod grid;
mod lm;
mod poly;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cdf::Point;
use crate::model::{ModelKind, ModelParams};

pub use grid::{grid_oracle_fit, GridAxis};
pub use lm::{fermi_initial_guess, fit_fermi_dirac, fit_fermi_dirac_traced};
pub use poly::{fit_polynomial, MAX_DEGREE};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("observations are all identical; the coefficient of determination is undefined")]
    DegenerateObservations,
    #[error("length mismatch: {observed} observations, {predicted} predictions")]
    LengthMismatch { observed: usize, predicted: usize },
    #[error("polynomial of degree {degree} needs {needed} distinct x values, found {distinct}")]
    RankDeficient {
        degree: usize,
        needed: usize,
        distinct: usize,
    },
    #[error("unsupported polynomial degree {0} (supported: 1..={MAX_DEGREE})")]
    UnsupportedDegree(usize),
    #[error("need at least {needed} points, found {found}")]
    TooFewPoints { needed: usize, found: usize },
    #[error("point {index} is not finite")]
    NonFinitePoint { index: usize },
    #[error("no admissible points remain after the log-log transform")]
    EmptyAfterTransform,
    #[error("invalid fit configuration: {0}")]
    InvalidConfig(String),
    #[error("did not converge within {} iterations (sse = {:.6e})", .0.iterations, .0.residual_norm)]
    NotConverged(Box<FitResult>),
}

/// The axes the models are fitted on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Space {
    /// Probability percent against expenditure.
    #[default]
    Linear,
    /// `ln p` against `ln x`; points with `x = 0` or `p = 0` are dropped.
    LogLog,
}

impl Space {
    pub fn transform(&self, points: &[Point]) -> Vec<Point> {
        match self {
            Space::Linear => points.to_vec(),
            Space::LogLog => points
                .iter()
                .filter(|pt| pt.x > 0.0 && pt.p > 0.0)
                .map(|pt| Point::new(pt.x.ln(), pt.p.ln()))
                .collect(),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Space::Linear => "linear",
            Space::LogLog => "loglog",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Space {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear" => Ok(Space::Linear),
            "loglog" | "log-log" => Ok(Space::LogLog),
            other => Err(format!("unknown space `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitConfig {
    pub max_iterations: usize,
    /// Relative parameter-step tolerance.
    pub tol_step: f64,
    /// Relative cost-decrease tolerance.
    pub tol_cost: f64,
    /// Initial damping.
    pub damping_init: f64,
    /// Damping is multiplied by this on a rejected step and divided by it on
    /// an accepted one.
    pub damping_factor: f64,
    pub space: Space,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            tol_step: 1e-10,
            tol_cost: 1e-12,
            damping_init: 1e-3,
            damping_factor: 10.0,
            space: Space::Linear,
        }
    }
}

impl FitConfig {
    pub fn validate(&self) -> Result<(), FitError> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(FitError::InvalidConfig(format!("{name} must be positive, got {v}")))
            }
        };
        positive("tol_step", self.tol_step)?;
        positive("tol_cost", self.tol_cost)?;
        positive("damping_init", self.damping_init)?;
        if self.max_iterations == 0 {
            return Err(FitError::InvalidConfig("max_iterations must be at least 1".into()));
        }
        if !(self.damping_factor.is_finite() && self.damping_factor > 1.0) {
            return Err(FitError::InvalidConfig(format!(
                "damping_factor must exceed 1, got {}",
                self.damping_factor
            )));
        }
        Ok(())
    }
}

/// Why an iterative fit stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Closed-form solve.
    Exact,
    StepTolerance,
    CostTolerance,
    /// Zero residual, or no damped step reduces the cost any further.
    Stationary,
    MaxIterations,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub params: ModelParams,
    /// Coefficient of determination as a fraction.
    pub r_squared: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Sum of squared residuals.
    pub residual_norm: f64,
    pub termination: Termination,
}

impl FitResult {
    pub fn kind(&self) -> ModelKind {
        self.params.kind()
    }

    pub fn r_squared_percent(&self) -> f64 {
        100.0 * self.r_squared
    }
}

/// `1 - SS_res / SS_tot`. Negative when the predictions are worse than the
/// observed mean.
pub fn r_squared(observed: &[f64], predicted: &[f64]) -> Result<f64, FitError> {
    if observed.len() != predicted.len() {
        return Err(FitError::LengthMismatch {
            observed: observed.len(),
            predicted: predicted.len(),
        });
    }
    let ss_tot = total_sum_of_squares(observed);
    if !(ss_tot > 0.0) {
        return Err(FitError::DegenerateObservations);
    }
    let ss_res: f64 = observed
        .iter()
        .zip(predicted)
        .map(|(y, f)| (y - f).powi(2))
        .sum();
    Ok(1.0 - ss_res / ss_tot)
}

fn total_sum_of_squares(observed: &[f64]) -> f64 {
    if observed.len() < 2 {
        return 0.0;
    }
    let mean = observed.iter().sum::<f64>() / observed.len() as f64;
    observed.iter().map(|y| (y - mean).powi(2)).sum()
}

/// Sum of squared residuals of `model` over `points`.
pub fn sse(points: &[Point], model: &ModelParams) -> f64 {
    points.iter().map(|pt| (pt.p - model.eval(pt.x)).powi(2)).sum()
}

pub(crate) fn check_finite(points: &[Point]) -> Result<(), FitError> {
    match points
        .iter()
        .position(|pt| !(pt.x.is_finite() && pt.p.is_finite()))
    {
        Some(index) => Err(FitError::NonFinitePoint { index }),
        None => Ok(()),
    }
}

pub(crate) fn score(points: &[Point], params: &ModelParams) -> Result<f64, FitError> {
    let observed: Vec<f64> = points.iter().map(|pt| pt.p).collect();
    let predicted: Vec<f64> = points.iter().map(|pt| params.eval(pt.x)).collect();
    r_squared(&observed, &predicted)
}

/// Fits one model family, transforming the points into `config.space` first.
///
/// The returned parameters and R² live in the transformed space.
pub fn fit_model(
    points: &[Point],
    kind: ModelKind,
    config: &FitConfig,
) -> Result<FitResult, FitError> {
    let transformed = config.space.transform(points);
    if transformed.is_empty() {
        return Err(FitError::EmptyAfterTransform);
    }
    match kind {
        ModelKind::FermiDirac => fit_fermi_dirac(&transformed, config, None),
        ModelKind::Polynomial(degree) => fit_polynomial(&transformed, degree),
    }
}
