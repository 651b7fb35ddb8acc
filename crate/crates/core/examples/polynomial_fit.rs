// Straight-line and higher-degree polynomial fits of one mean series.
// R² can only grow with the degree.
//
// cargo run --example polynomial_fit

use std::error::Error;

use decfit::cdf::{validate_series, Measure, ValueKind};
use decfit::fit::fit_polynomial;
use decfit::io::format_sig;
use decfit::ModelParams;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let means = [142.5, 191.8, 238.4, 287.1, 336.9, 392.6, 451.3, 528.7, 634.2, 912.5];
    let series = validate_series("2003/2004", &means, ValueKind::Mean, Measure::Disposable)?;
    let cdf = series.to_cdf();

    let mut last = f64::NEG_INFINITY;
    for degree in 1..=4 {
        let fit = fit_polynomial(cdf.points(), degree)?;
        let ModelParams::Polynomial(c) = &fit.params else {
            unreachable!()
        };
        let coeffs: Vec<String> = c.coeffs().iter().map(|&v| format_sig(v)).collect();
        println!(
            "degree {degree}: R² = {:6.2}%  coefficients [{}]",
            fit.r_squared_percent(),
            coeffs.join(", ")
        );
        assert!(fit.r_squared >= last - 1e-12);
        last = fit.r_squared;
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
