//! Decile table CSV.
//!
//! ```text
//! label,value_kind,measure,d1,d2,d3,d4,d5,d6,d7,d8,d9,d10
//! 2003/2004,mean,disposable,130,180,...,900
//! ```
//!
//! One series per row, comma separated, `.` as the decimal point and no
//! thousands separators. Lines starting with `#` are comments. Labels are
//! opaque strings; split years such as `2003/2004` are never read as dates.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use csv::{ReaderBuilder, StringRecord, Trim};

use super::IoError;
use crate::cdf::{validate_series, CdfError, DecileSeries, Measure, ValueKind, DECILES};

pub const HEADER: [&str; 13] = [
    "label",
    "value_kind",
    "measure",
    "d1",
    "d2",
    "d3",
    "d4",
    "d5",
    "d6",
    "d7",
    "d8",
    "d9",
    "d10",
];

/// A row that parsed but failed series validation.
#[derive(Debug, Clone, PartialEq)]
pub struct RejectedRow {
    pub line: u64,
    pub label: String,
    pub error: CdfError,
}

impl RejectedRow {
    pub fn into_error(self) -> IoError {
        IoError::Series {
            line: self.line,
            label: self.label,
            source: self.error,
        }
    }
}

/// The series of one decile table, all sharing a value kind and measure.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Dataset {
    series: Vec<DecileSeries>,
    /// Source line of each entry in `series`.
    lines: Vec<u64>,
    rejected: Vec<RejectedRow>,
    source: String,
}

impl Dataset {
    /// Builds a dataset from already validated series.
    pub fn new(series: Vec<DecileSeries>, source: impl Into<String>) -> Result<Self, IoError> {
        let mut ds = Dataset {
            source: source.into(),
            ..Dataset::default()
        };
        for (k, s) in series.into_iter().enumerate() {
            ds.push(k as u64 + 1, s)?;
        }
        Ok(ds)
    }

    fn push(&mut self, line: u64, s: DecileSeries) -> Result<(), IoError> {
        if let Some(first) = self.series.first() {
            if first.value_kind() != s.value_kind() || first.measure() != s.measure() {
                return Err(IoError::Parse {
                    line,
                    message: format!(
                        "series `{}` is {}/{}, but the dataset is {}/{}",
                        s.label(),
                        s.value_kind(),
                        s.measure(),
                        first.value_kind(),
                        first.measure()
                    ),
                });
            }
        }
        if self.series.iter().any(|o| o.label() == s.label()) {
            return Err(IoError::Parse {
                line,
                message: format!("duplicate label `{}`", s.label()),
            });
        }
        self.series.push(s);
        self.lines.push(line);
        Ok(())
    }

    pub fn series(&self) -> &[DecileSeries] {
        &self.series
    }

    pub fn lines(&self) -> &[u64] {
        &self.lines
    }

    /// Rows dropped by [`parse_decile_csv_collecting`].
    pub fn rejected(&self) -> &[RejectedRow] {
        &self.rejected
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn set_source(&mut self, source: impl Into<String>) {
        self.source = source.into();
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty() && self.rejected.is_empty()
    }
}

/// Parses a decile table, failing on the first malformed or invalid row.
pub fn parse_decile_csv(bytes: &[u8]) -> Result<Dataset, IoError> {
    let mut ds = parse_decile_csv_collecting(bytes)?;
    if ds.rejected.is_empty() {
        Ok(ds)
    } else {
        Err(ds.rejected.swap_remove(0).into_error())
    }
}

/// Parses a decile table, setting rows that fail series validation aside
/// in [`Dataset::rejected`]. Malformed CSV is still an error.
pub fn parse_decile_csv_collecting(bytes: &[u8]) -> Result<Dataset, IoError> {
    let mut ds = Dataset::default();
    let mut labels = HashSet::new();
    let mut saw_header = false;
    for (idx, raw) in bytes.split(|&b| b == b'\n').enumerate() {
        let line = idx as u64 + 1;
        let text = std::str::from_utf8(raw).map_err(|e| IoError::Parse {
            line,
            message: format!("invalid UTF-8: {e}"),
        })?;
        let text = text.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let record = read_record(text, line)?;
        if !saw_header {
            check_header(&record, line)?;
            saw_header = true;
            continue;
        }
        let (label, values, kind, measure) = parse_row(&record, line)?;
        if !labels.insert(label.clone()) {
            return Err(IoError::Parse {
                line,
                message: format!("duplicate label `{label}`"),
            });
        }
        match validate_series(label.clone(), &values, kind, measure) {
            Ok(s) => ds.push(line, s)?,
            Err(error) => ds.rejected.push(RejectedRow { line, label, error }),
        }
    }
    if !saw_header {
        return Err(IoError::Parse {
            line: 1,
            message: "missing header".into(),
        });
    }
    Ok(ds)
}

/// Splits one line into fields. Quoted fields may hold commas but not
/// line breaks.
fn read_record(text: &str, line: u64) -> Result<StringRecord, IoError> {
    let mut reader = ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(Trim::All)
        .from_reader(text.as_bytes());
    let mut record = StringRecord::new();
    match reader.read_record(&mut record) {
        Ok(true) => Ok(record),
        Ok(false) => Err(IoError::Parse {
            line,
            message: "empty record".into(),
        }),
        Err(e) => Err(IoError::Parse {
            line,
            message: e.to_string(),
        }),
    }
}

pub fn read_decile_csv(path: impl AsRef<Path>) -> Result<Dataset, IoError> {
    let path = path.as_ref();
    let bytes = std::fs::read(path)?;
    let mut ds = parse_decile_csv(&bytes)?;
    ds.set_source(path.display().to_string());
    Ok(ds)
}

fn check_header(record: &StringRecord, line: u64) -> Result<(), IoError> {
    if record.iter().eq(HEADER.iter().copied()) {
        Ok(())
    } else {
        Err(IoError::Parse {
            line,
            message: format!(
                "expected header `{}`, found `{}`",
                HEADER.join(","),
                record.iter().collect::<Vec<_>>().join(",")
            ),
        })
    }
}

fn parse_row(
    record: &StringRecord,
    line: u64,
) -> Result<(String, Vec<f64>, ValueKind, Measure), IoError> {
    let parse_err = |message: String| IoError::Parse { line, message };
    if record.len() < 3 {
        return Err(parse_err(format!(
            "expected label, value_kind and measure, found {} field(s)",
            record.len()
        )));
    }
    let label = record[0].to_string();
    if label.is_empty() {
        return Err(parse_err("empty label".into()));
    }
    let kind: ValueKind = record[1].parse().map_err(parse_err)?;
    let measure: Measure = record[2].parse().map_err(parse_err)?;
    let values = record
        .iter()
        .skip(3)
        .enumerate()
        .map(|(k, field)| {
            field
                .parse::<f64>()
                .map_err(|_| parse_err(format!("d{}: `{field}` is not a number", k + 1)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((label, values, kind, measure))
}

/// Writes a dataset back in the same layout. Values use the shortest
/// representation that reads back to the same `f64`.
pub fn write_decile_csv(ds: &Dataset) -> String {
    let mut out = HEADER.join(",");
    out.push('\n');
    for s in ds.series() {
        write!(out, "{},{},{}", quote(s.label()), s.value_kind(), s.measure()).unwrap();
        for v in s.values().iter().take(DECILES) {
            write!(out, ",{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub(crate) fn quote(field: &str) -> String {
    if field.contains([',', '"', '\n', '\r']) || field.starts_with('#') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const HEAD: &str = "label,value_kind,measure,d1,d2,d3,d4,d5,d6,d7,d8,d9,d10\n";

    fn text(rows: &[&str]) -> String {
        let mut s = HEAD.to_string();
        for r in rows {
            s.push_str(r);
            s.push('\n');
        }
        s
    }

    #[test]
    fn parses_mean_row() {
        let ds = parse_decile_csv(
            text(&["2003/2004,mean,disposable,130,180,230,290,350,420,500,590,700,900"]).as_bytes(),
        )
        .unwrap();
        assert_eq!(ds.series().len(), 1);
        assert_eq!(ds.series()[0].label(), "2003/2004");
        assert_eq!(ds.lines(), &[2]);
    }

    #[test]
    fn parses_lower_limit_row() {
        let ds = parse_decile_csv(
            text(&["Y,lower_limit,gross,0,20,30,40,50,60,70,80,90,100"]).as_bytes(),
        )
        .unwrap();
        assert_eq!(ds.series()[0].value_kind(), ValueKind::LowerLimit);
    }

    #[test]
    fn arity_error_carries_line() {
        let src = text(&[
            "A,mean,gross,1,2,3,4,5,6,7,8,9,10",
            "B,mean,gross,1,2,3,4,5,6,7,8,9",
        ]);
        match parse_decile_csv(src.as_bytes()) {
            Err(IoError::Series { line: 3, label, source: CdfError::WrongArity(9) }) => {
                assert_eq!(label, "B")
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn comments_keep_line_numbers() {
        let src = format!("# sample\n{HEAD}# note\nA,mean,gross,1,2,3,4,5,6,7,8,9,9\n");
        match parse_decile_csv(src.as_bytes()) {
            Err(IoError::Series { line: 4, source: CdfError::NonMonotone { .. }, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_input() {
        assert!(matches!(
            parse_decile_csv(b"label,kind\n"),
            Err(IoError::Parse { line: 1, .. })
        ));
        assert!(matches!(parse_decile_csv(b""), Err(IoError::Parse { .. })));
        let bad_number = text(&["A,mean,gross,1,2,x,4,5,6,7,8,9,10"]);
        assert!(matches!(
            parse_decile_csv(bad_number.as_bytes()),
            Err(IoError::Parse { line: 2, .. })
        ));
        let bad_kind = text(&["A,median,gross,1,2,3,4,5,6,7,8,9,10"]);
        assert!(matches!(
            parse_decile_csv(bad_kind.as_bytes()),
            Err(IoError::Parse { line: 2, .. })
        ));
        let mixed = text(&[
            "A,mean,gross,1,2,3,4,5,6,7,8,9,10",
            "B,mean,disposable,1,2,3,4,5,6,7,8,9,10",
        ]);
        assert!(matches!(
            parse_decile_csv(mixed.as_bytes()),
            Err(IoError::Parse { line: 3, .. })
        ));
        let dup = text(&[
            "A,mean,gross,1,2,3,4,5,6,7,8,9,10",
            "A,mean,gross,1,2,3,4,5,6,7,8,9,11",
        ]);
        assert!(matches!(
            parse_decile_csv(dup.as_bytes()),
            Err(IoError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_decile_csv(&[b'l', 0xff, b'\n']),
            Err(IoError::Parse { .. })
        ));
    }

    #[test]
    fn collecting_sets_invalid_rows_aside() {
        let src = text(&[
            "A,lower_limit,gross,0,2,3,4,5,6,7,8,9,10",
            "B,lower_limit,gross,5,6,7,8,9,10,11,12,13,14",
            "C,lower_limit,gross,0,3,4,5,6,7,8,9,10,11",
        ]);
        let ds = parse_decile_csv_collecting(src.as_bytes()).unwrap();
        assert_eq!(ds.series().len(), 2);
        assert_eq!(
            ds.rejected(),
            &[RejectedRow {
                line: 3,
                label: "B".into(),
                error: CdfError::BadLowerBound(5.0)
            }]
        );
    }

    #[test]
    fn category_measure_and_quoted_label() {
        let src = text(&["\"2003, Q1\",mean,category:clothing_footwear,1,2,3,4,5,6,7,8,9,10"]);
        let ds = parse_decile_csv(src.as_bytes()).unwrap();
        assert_eq!(ds.series()[0].label(), "2003, Q1");
        let back = parse_decile_csv(write_decile_csv(&ds).as_bytes()).unwrap();
        assert_eq!(back.series(), ds.series());
    }

    fn ten_sig(v: f64) -> f64 {
        format!("{v:.9e}").parse().unwrap()
    }

    proptest! {
        #[test]
        fn round_trip_is_lossless(steps in prop::collection::vec(1e-4..1e4f64, DECILES)) {
            let mut acc = 0.0;
            let values: Vec<f64> = steps.iter().map(|s| { acc = ten_sig(acc + s); acc }).collect();
            prop_assume!(values.windows(2).all(|w| w[0] < w[1]));
            let s = validate_series("2000/2001", &values, ValueKind::Mean, Measure::Gross).unwrap();
            let ds = Dataset::new(vec![s], "mem").unwrap();
            let back = parse_decile_csv(write_decile_csv(&ds).as_bytes()).unwrap();
            prop_assert_eq!(back.series(), ds.series());
        }
    }
}
