// Read the bundled decile tables, fit both models and print the reports.
//
// cargo run --example pipeline_report

use std::error::Error;
use std::path::Path;

use decfit::fit::FitConfig;
use decfit::io::{emit_report, read_decile_csv, run_pipeline, ReportFormat};
use decfit::ModelKind;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let models = [ModelKind::FermiDirac, ModelKind::Polynomial(1)];
    for file in ["sample.csv", "sample_lower_limit.csv"] {
        let dataset = read_decile_csv(data.join(file))?;
        let out = run_pipeline(&dataset, &models, &FitConfig::default())?;
        println!("== {} ({} series)", file, dataset.series().len());
        print!("{}", emit_report(&out.report, ReportFormat::Table));
        println!();
        print!("{}", emit_report(&out.report, ReportFormat::Csv));
        if out.has_failures() {
            return Err(format!("{} series failed", out.failures.len()).into());
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
