// Export observed points and a sampled fitted curve for external plotting.
//
// cargo run --example plot_data [out.csv]

use std::error::Error;

use decfit::cdf::{validate_series, Measure, ValueKind};
use decfit::fit::{fit_fermi_dirac, FitConfig};
use decfit::io::emit_plot_data;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let means = [142.5, 191.8, 238.4, 287.1, 336.9, 392.6, 451.3, 528.7, 634.2, 912.5];
    let series = validate_series("2003/2004", &means, ValueKind::Mean, Measure::Gross)?;
    let cdf = series.to_cdf();
    let fit = fit_fermi_dirac(cdf.points(), &FitConfig::default(), None)?;
    let text = emit_plot_data(cdf.points(), &fit, 25);

    match std::env::args().nth(1) {
        Some(path) if !path.starts_with('-') => {
            std::fs::write(&path, &text)?;
            println!("wrote {path}");
        }
        _ => print!("{text}"),
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
