use nalgebra::{DMatrix, DVector};

use super::{check_finite, score, FitError, FitResult, Termination};
use crate::cdf::Point;
use crate::model::{ModelParams, PolyCoeffs};

pub const MAX_DEGREE: usize = 4;

/// Least-squares polynomial of the given degree through `points`.
///
/// The Vandermonde matrix is column-equilibrated and solved by Householder
/// QR, never through the normal equations.
pub fn fit_polynomial(points: &[Point], degree: usize) -> Result<FitResult, FitError> {
    if !(1..=MAX_DEGREE).contains(&degree) {
        return Err(FitError::UnsupportedDegree(degree));
    }
    check_finite(points)?;
    let ncols = degree + 1;
    let rank_deficient = |distinct| FitError::RankDeficient {
        degree,
        needed: ncols,
        distinct,
    };

    let mut xs: Vec<f64> = points.iter().map(|pt| pt.x).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    if xs.len() < ncols {
        return Err(rank_deficient(xs.len()));
    }

    let n = points.len();
    // Column j holds x^(degree - j).
    let mut a = DMatrix::from_fn(n, ncols, |i, j| points[i].x.powi((degree - j) as i32));
    let y = DVector::from_iterator(n, points.iter().map(|pt| pt.p));

    let scales: Vec<f64> = (0..ncols).map(|j| a.column(j).norm()).collect();
    if scales.iter().any(|s| !(*s > 0.0)) {
        return Err(rank_deficient(xs.len()));
    }
    for (j, s) in scales.iter().enumerate() {
        a.column_mut(j).unscale_mut(*s);
    }

    let qr = a.qr();
    let r = qr.r();
    let diag_max = (0..ncols).map(|k| r[(k, k)].abs()).fold(0.0, f64::max);
    if (0..ncols).any(|k| r[(k, k)].abs() <= 1e-12 * diag_max) {
        return Err(rank_deficient(xs.len()));
    }
    let qty = qr.q().transpose() * &y;
    let b = r
        .solve_upper_triangular(&qty)
        .ok_or_else(|| rank_deficient(xs.len()))?;

    let coeffs: Vec<f64> = b.iter().zip(&scales).map(|(bj, s)| bj / s).collect();
    let params = ModelParams::Polynomial(PolyCoeffs::new(coeffs).expect("degree >= 1"));
    let r_squared = score(points, &params)?;
    let residual_norm = super::sse(points, &params);
    Ok(FitResult {
        params,
        r_squared,
        iterations: 0,
        converged: true,
        residual_norm,
        termination: Termination::Exact,
    })
}
