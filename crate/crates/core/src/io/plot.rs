use std::fmt::Write as _;

use crate::cdf::Point;
use crate::fit::FitResult;

/// Plot data for one fit as CSV with two sections:
///
/// ```text
/// # observed
/// x,p,fitted
/// ...
/// # curve
/// x,fitted
/// ...
/// ```
///
/// The curve is sampled at `samples` evenly spaced x over `[0, 1.2 * x_max]`.
///
/// # Panics
///
/// If `samples < 2`.
pub fn emit_plot_data(points: &[Point], fit: &FitResult, samples: usize) -> String {
    assert!(samples >= 2, "need at least two curve samples");
    let mut out = String::from("# observed\nx,p,fitted\n");
    for pt in points {
        writeln!(out, "{},{},{}", pt.x, pt.p, fit.params.eval(pt.x)).unwrap();
    }
    out.push_str("# curve\nx,fitted\n");
    let x_max = points.iter().map(|pt| pt.x).fold(0.0, f64::max);
    let hi = 1.2 * x_max;
    for k in 0..samples {
        let x = if k + 1 == samples {
            hi
        } else {
            hi * k as f64 / (samples - 1) as f64
        };
        writeln!(out, "{},{}", x, fit.params.eval(x)).unwrap();
    }
    out
}
