// Fit the Fermi-Dirac curve to a synthetic point set and recover its
// parameters.
//
// cargo run --example fermi_dirac_fit

use std::error::Error;

use decfit::fit::{fit_fermi_dirac, FitConfig};
use decfit::model::eval_fermi_dirac;
use decfit::{FermiParams, ModelParams, Point};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let truth = FermiParams::new(100.0, 8.196, 0.4881)?;
    let points: Vec<Point> = (0..11)
        .map(|k| {
            let x = 1.9 * truth.mu() * k as f64 / 10.0;
            Point::new(x, eval_fermi_dirac(&truth, x))
        })
        .collect();

    let fit = fit_fermi_dirac(&points, &FitConfig::default(), None)?;
    let ModelParams::FermiDirac(p) = fit.params else {
        unreachable!()
    };
    println!(
        "g = {:.6}  ln g = {:.4}  mu = {:.6}  T = {:.6}",
        p.g(),
        p.ln_g(),
        p.mu(),
        p.t()
    );
    println!(
        "R² = {:.6}%  sse = {:.3e}  iterations = {}  ({:?})",
        fit.r_squared_percent(),
        fit.residual_norm,
        fit.iterations,
        fit.termination
    );
    assert!((p.mu() - truth.mu()).abs() < 1e-6);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
