use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use decfit::fit::{FitConfig, Space};
use decfit::io::{emit_plot_data, emit_report, parse_decile_csv_collecting, run_pipeline, ReportFormat};
use decfit::ModelKind;

const PLOT_SAMPLES: usize = 200;

#[derive(Parser)]
#[command(name = "decfit", version, about = "Fit decile expenditure tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit every series of a decile CSV and print the coefficient table.
    Fit(FitArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Fermi,
    Poly,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Linear,
    Loglog,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
}

#[derive(clap::Args)]
struct FitArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "both")]
    model: ModelArg,
    /// Polynomial degree (1 to 4).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=4))]
    degree: u8,
    #[arg(long, value_enum, default_value = "linear")]
    space: SpaceArg,
    #[arg(long, value_enum, default_value = "table")]
    format: FormatArg,
    /// Write one plot-data CSV per fit to `<prefix>_<label>_<model>.csv`.
    #[arg(long, value_name = "OUT_PREFIX")]
    plot: Option<String>,
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(1..))]
    max_iter: u32,
}

fn slug(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '-' })
        .collect()
}

fn run(args: FitArgs) -> ExitCode {
    let bytes = match std::fs::read(&args.input) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {}: {e}", args.input.display());
            return ExitCode::from(2);
        }
    };
    let mut dataset = match parse_decile_csv_collecting(&bytes) {
        Ok(ds) => ds,
        Err(e) => {
            eprintln!("error: {}: {e}", args.input.display());
            return ExitCode::from(2);
        }
    };
    dataset.set_source(args.input.display().to_string());

    let degree = usize::from(args.degree);
    let models = match args.model {
        ModelArg::Fermi => vec![ModelKind::FermiDirac],
        ModelArg::Poly => vec![ModelKind::Polynomial(degree)],
        ModelArg::Both => vec![ModelKind::FermiDirac, ModelKind::Polynomial(degree)],
    };
    let config = FitConfig {
        max_iterations: args.max_iter as usize,
        space: match args.space {
            SpaceArg::Linear => Space::Linear,
            SpaceArg::Loglog => Space::LogLog,
        },
        ..FitConfig::default()
    };
    let format = match args.format {
        FormatArg::Table => ReportFormat::Table,
        FormatArg::Csv => ReportFormat::Csv,
    };

    let output = match run_pipeline(&dataset, &models, &config) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {}: {e}", dataset.source());
            return ExitCode::from(2);
        }
    };
    print!("{}", emit_report(&output.report, format));

    if let Some(prefix) = &args.plot {
        for row in &output.report.rows {
            let model = match row.model() {
                ModelKind::FermiDirac => "fermi".to_string(),
                ModelKind::Polynomial(d) => format!("poly{d}"),
            };
            let path = format!("{prefix}_{}_{model}.csv", slug(&row.label));
            let data = emit_plot_data(&row.points, &row.fit, PLOT_SAMPLES);
            if let Err(e) = std::fs::write(&path, data) {
                eprintln!("error: writing {path}: {e}");
                return ExitCode::from(2);
            }
        }
    }

    for failure in &output.failures {
        eprintln!("error: {}: {}", failure.label, failure.error);
    }
    if output.has_failures() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Fit(args) => run(args),
    }
}
