//! Decile series and the cumulative point sets built from them.
//!
//! A mean series `x1..x10` becomes the 11 points
//! `(0, 100), (x1, 90), ..., (x10, 0)`. A lower-limit series, whose first
//! bound is always zero, becomes the 10 points
//! `(0, 100), (x2, 90), ..., (x10, 10)`: a tenth of the population lies
//! above the last bound, so no 0% point exists.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub const DECILES: usize = 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CdfError {
    #[error("expected {DECILES} decile values, found {0}")]
    WrongArity(usize),
    #[error("decile values must be strictly increasing (d{} = {prev} is not below d{} = {next})", .index, .index + 1)]
    NonMonotone { index: usize, prev: f64, next: f64 },
    #[error("decile d{} is negative or not finite: {value}", .index + 1)]
    NegativeValue { index: usize, value: f64 },
    #[error("lower-limit series must start at 0, found {0}")]
    BadLowerBound(f64),
    #[error("expected a {expected} series, got {found}")]
    WrongKind {
        expected: ValueKind,
        found: ValueKind,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValueKind {
    Mean,
    LowerLimit,
}

impl ValueKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ValueKind::Mean => "mean",
            ValueKind::LowerLimit => "lower_limit",
        }
    }
}

impl fmt::Display for ValueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ValueKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mean" => Ok(ValueKind::Mean),
            "lower_limit" => Ok(ValueKind::LowerLimit),
            other => Err(format!(
                "unknown value kind `{other}` (expected `mean` or `lower_limit`)"
            )),
        }
    }
}

/// What the expenditure column measures.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Measure {
    Gross,
    Disposable,
    Category(String),
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::Gross => f.write_str("gross"),
            Measure::Disposable => f.write_str("disposable"),
            Measure::Category(name) => write!(f, "category:{name}"),
        }
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gross" => Ok(Measure::Gross),
            "disposable" => Ok(Measure::Disposable),
            other => match other.strip_prefix("category:") {
                Some(name) if !name.is_empty() => Ok(Measure::Category(name.to_string())),
                _ => Err(format!(
                    "unknown measure `{other}` (expected `gross`, `disposable` or `category:<name>`)"
                )),
            },
        }
    }
}

/// One labelled year of ten strictly increasing decile values.
#[derive(Debug, Clone, PartialEq)]
pub struct DecileSeries {
    label: String,
    values: [f64; DECILES],
    value_kind: ValueKind,
    measure: Measure,
}

impl DecileSeries {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn values(&self) -> &[f64; DECILES] {
        &self.values
    }

    pub fn value_kind(&self) -> ValueKind {
        self.value_kind
    }

    pub fn measure(&self) -> &Measure {
        &self.measure
    }

    /// Builds the point set matching this series' value kind.
    pub fn to_cdf(&self) -> CdfPoints {
        match self.value_kind {
            ValueKind::Mean => mean_points(&self.values),
            ValueKind::LowerLimit => lower_limit_points(&self.values),
        }
    }
}

pub fn validate_series(
    label: impl Into<String>,
    values: &[f64],
    value_kind: ValueKind,
    measure: Measure,
) -> Result<DecileSeries, CdfError> {
    let values: [f64; DECILES] = values
        .try_into()
        .map_err(|_| CdfError::WrongArity(values.len()))?;
    if let Some((index, &value)) = values
        .iter()
        .enumerate()
        .find(|(_, v)| !(v.is_finite() && **v >= 0.0))
    {
        return Err(CdfError::NegativeValue { index, value });
    }
    if let Some(index) = (0..DECILES - 1).find(|&i| values[i] >= values[i + 1]) {
        return Err(CdfError::NonMonotone {
            index,
            prev: values[index],
            next: values[index + 1],
        });
    }
    if value_kind == ValueKind::LowerLimit && values[0] != 0.0 {
        return Err(CdfError::BadLowerBound(values[0]));
    }
    Ok(DecileSeries {
        label: label.into(),
        values,
        value_kind,
        measure,
    })
}

/// A single (expenditure, probability-percent) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub p: f64,
}

impl Point {
    pub fn new(x: f64, p: f64) -> Self {
        Self { x, p }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Methodology {
    /// Mean expenditure per decile, 11 points ending at 0%.
    M,
    /// Lower limit per decile, 10 points ending at 10%.
    L,
}

/// An ordered cumulative point set. Only constructible from a validated
/// series, so x is strictly increasing and p strictly decreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct CdfPoints {
    points: Vec<Point>,
    methodology: Methodology,
}

impl CdfPoints {
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn methodology(&self) -> Methodology {
        self.methodology
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl AsRef<[Point]> for CdfPoints {
    fn as_ref(&self) -> &[Point] {
        &self.points
    }
}

fn mean_points(values: &[f64; DECILES]) -> CdfPoints {
    let points = std::iter::once(Point::new(0.0, 100.0))
        .chain(
            values
                .iter()
                .enumerate()
                .map(|(k, &x)| Point::new(x, 90.0 - 10.0 * k as f64)),
        )
        .collect();
    CdfPoints {
        points,
        methodology: Methodology::M,
    }
}

fn lower_limit_points(values: &[f64; DECILES]) -> CdfPoints {
    let points = std::iter::once(Point::new(0.0, 100.0))
        .chain(
            values[1..]
                .iter()
                .enumerate()
                .map(|(k, &x)| Point::new(x, 90.0 - 10.0 * k as f64)),
        )
        .collect();
    CdfPoints {
        points,
        methodology: Methodology::L,
    }
}

pub fn build_mean_cdf(series: &DecileSeries) -> Result<CdfPoints, CdfError> {
    match series.value_kind {
        ValueKind::Mean => Ok(mean_points(&series.values)),
        found => Err(CdfError::WrongKind {
            expected: ValueKind::Mean,
            found,
        }),
    }
}

pub fn build_lower_limit_cdf(series: &DecileSeries) -> Result<CdfPoints, CdfError> {
    match series.value_kind {
        ValueKind::LowerLimit => Ok(lower_limit_points(&series.values)),
        found => Err(CdfError::WrongKind {
            expected: ValueKind::LowerLimit,
            found,
        }),
    }
}
