//! CSV ingestion, the fitting pipeline and report output.

mod decile_csv;
mod pipeline;
mod plot;
mod report;

use thiserror::Error;

use crate::cdf::CdfError;

pub use decile_csv::{
    parse_decile_csv, parse_decile_csv_collecting, read_decile_csv, write_decile_csv, Dataset,
    RejectedRow, HEADER,
};
pub use pipeline::{
    run_pipeline, PipelineOutput, Report, ReportRow, SeriesError, SeriesFailure, FORMAT_VERSION,
};
pub use plot::emit_plot_data;
pub use report::{
    emit_report, format_r2_percent, format_sig, format_sig_digits, ReportFormat, CSV_HEADER,
};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("line {line} (`{label}`): {source}")]
    Series {
        line: u64,
        label: String,
        source: CdfError,
    },
    #[error("dataset contains no series")]
    EmptyDataset,
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl IoError {
    /// Source line the error refers to, if any.
    pub fn line(&self) -> Option<u64> {
        match self {
            IoError::Parse { line, .. } | IoError::Series { line, .. } => Some(*line),
            _ => None,
        }
    }
}
