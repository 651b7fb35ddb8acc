// Fit both models on ln(p) against ln(x) instead of the linear axes.
// Points at x = 0 or p = 0 are left out.
//
// cargo run --example log_log_fit

use std::error::Error;

use decfit::cdf::{validate_series, Measure, ValueKind};
use decfit::fit::{fit_model, FitConfig, Space};
use decfit::ModelKind;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let means = [142.5, 191.8, 238.4, 287.1, 336.9, 392.6, 451.3, 528.7, 634.2, 912.5];
    let series = validate_series("2003/2004", &means, ValueKind::Mean, Measure::Disposable)?;
    let cdf = series.to_cdf();

    for space in [Space::Linear, Space::LogLog] {
        let config = FitConfig {
            space,
            ..FitConfig::default()
        };
        println!("{space} ({} points)", space.transform(cdf.points()).len());
        for kind in [ModelKind::FermiDirac, ModelKind::Polynomial(1)] {
            let fit = fit_model(cdf.points(), kind, &config)?;
            println!("  {kind:<22} R² = {:6.2}%  {:?}", fit.r_squared_percent(), fit.params);
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
