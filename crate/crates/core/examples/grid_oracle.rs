// Compare the Levenberg-Marquardt optimum with an exhaustive grid search
// on noisy synthetic data.
//
// cargo run --release --example grid_oracle

use std::error::Error;

use decfit::fit::{fit_fermi_dirac, grid_oracle_fit, sse, FitConfig, GridAxis};
use decfit::model::eval_fermi_dirac;
use decfit::{FermiParams, ModelParams, Point};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let truth = FermiParams::new(100.0, 8.196, 0.4881)?;
    // Fixed pseudo-noise in [-0.5, 0.5].
    let noise = [0.31, -0.42, 0.07, 0.49, -0.18, -0.33, 0.22, -0.05, 0.44, -0.27, 0.12];
    let points: Vec<Point> = noise
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let x = 1.9 * truth.mu() * k as f64 / 10.0;
            Point::new(x, eval_fermi_dirac(&truth, x) + e)
        })
        .collect();

    let fit = fit_fermi_dirac(&points, &FitConfig::default(), None)?;
    let best = grid_oracle_fit(
        &points,
        GridAxis::new(95.0, 105.0, 41),
        GridAxis::new(0.95 * truth.mu(), 1.05 * truth.mu(), 41),
        GridAxis::new(0.8 * truth.t(), 1.2 * truth.t(), 41),
    );
    let grid_sse = sse(&points, &ModelParams::FermiDirac(best));
    println!("LM   {:?}  sse {:.6}", fit.params, fit.residual_norm);
    println!("grid {:?}  sse {:.6}", best, grid_sse);
    assert!(fit.residual_norm <= grid_sse + 1e-6);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
