use rayon::prelude::*;
use thiserror::Error;

use super::{Dataset, IoError};
use crate::cdf::{CdfError, DecileSeries, Point};
use crate::fit::{fit_model, FitConfig, FitError, FitResult};
use crate::model::ModelKind;

pub const FORMAT_VERSION: &str = "1";

/// One fitted (series, model) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub label: String,
    pub fit: FitResult,
    /// The points the model was fitted to, in the fit's space.
    pub points: Vec<Point>,
}

impl ReportRow {
    pub fn model(&self) -> ModelKind {
        self.fit.kind()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub rows: Vec<ReportRow>,
    pub format_version: String,
}

impl Default for Report {
    fn default() -> Self {
        Self {
            rows: Vec::new(),
            format_version: FORMAT_VERSION.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("line {line}: {source}")]
    Invalid { line: u64, source: CdfError },
    #[error("{model}: {source}")]
    Fit { model: ModelKind, source: FitError },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesFailure {
    pub label: String,
    pub error: SeriesError,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PipelineOutput {
    pub report: Report,
    pub failures: Vec<SeriesFailure>,
}

impl PipelineOutput {
    pub fn has_failures(&self) -> bool {
        !self.failures.is_empty()
    }
}

/// Builds each series' cumulative points, fits every requested model and
/// scores it.
///
/// Rows follow input order, then model name. A failing series is recorded
/// in [`PipelineOutput::failures`] without stopping the others; a fit that
/// hits the iteration limit still contributes its row, flagged as not
/// converged, alongside a failure entry. Series are fitted in parallel.
pub fn run_pipeline(
    dataset: &Dataset,
    models: &[ModelKind],
    config: &FitConfig,
) -> Result<PipelineOutput, IoError> {
    if dataset.is_empty() {
        return Err(IoError::EmptyDataset);
    }
    config
        .validate()
        .map_err(|e| IoError::Config(e.to_string()))?;
    let mut models = models.to_vec();
    models.sort();
    models.dedup();

    // Rejected rows and valid series interleaved back into line order.
    enum Entry<'a> {
        Valid(&'a DecileSeries),
        Rejected(&'a super::RejectedRow),
    }
    let mut entries: Vec<(u64, Entry)> = dataset
        .series()
        .iter()
        .zip(dataset.lines())
        .map(|(s, &line)| (line, Entry::Valid(s)))
        .chain(dataset.rejected().iter().map(|r| (r.line, Entry::Rejected(r))))
        .collect();
    entries.sort_by_key(|(line, _)| *line);

    let per_series: Vec<(Vec<ReportRow>, Vec<SeriesFailure>)> = entries
        .par_iter()
        .map(|(_, entry)| match entry {
            Entry::Valid(s) => fit_series(s, &models, config),
            Entry::Rejected(r) => (
                Vec::new(),
                vec![SeriesFailure {
                    label: r.label.clone(),
                    error: SeriesError::Invalid {
                        line: r.line,
                        source: r.error.clone(),
                    },
                }],
            ),
        })
        .collect();

    let mut out = PipelineOutput::default();
    for (rows, failures) in per_series {
        out.report.rows.extend(rows);
        out.failures.extend(failures);
    }
    Ok(out)
}

fn fit_series(
    series: &DecileSeries,
    models: &[ModelKind],
    config: &FitConfig,
) -> (Vec<ReportRow>, Vec<SeriesFailure>) {
    let cdf = series.to_cdf();
    let points = config.space.transform(cdf.points());
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for &model in models {
        let fail = |source| SeriesFailure {
            label: series.label().to_string(),
            error: SeriesError::Fit { model, source },
        };
        match fit_model(cdf.points(), model, config) {
            Ok(fit) => rows.push(ReportRow {
                label: series.label().to_string(),
                fit,
                points: points.clone(),
            }),
            Err(FitError::NotConverged(partial)) => {
                rows.push(ReportRow {
                    label: series.label().to_string(),
                    fit: (*partial).clone(),
                    points: points.clone(),
                });
                failures.push(fail(FitError::NotConverged(partial)));
            }
            Err(e) => failures.push(fail(e)),
        }
    }
    (rows, failures)
}
